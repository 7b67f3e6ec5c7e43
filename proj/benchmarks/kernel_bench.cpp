// Microbenchmarks for the operation kernels. The interesting comparison is
// pair extraction vs attempted swap across matrix sizes and fills, plus the
// checkerboard total that dominates the experiment drivers.

#include <benchmark/benchmark.h>

#include "tradenull/labkit.hpp"
#include "tradenull/metrics.hpp"
#include "tradenull/swapper.hpp"
#include "tradenull/trader.hpp"

using namespace tradenull;

namespace {

BinaryMatrix bench_matrix(int side, double fill) {
    Rng rng(mix_seed(0xBE9C4, static_cast<std::uint64_t>(side * 1000) +
                                  static_cast<std::uint64_t>(fill * 100)));
    return gen_random_fill(side, side, fill, rng);
}

void BM_pair_extraction(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const double fill = static_cast<double>(state.range(1)) / 100.0;
    const BinaryMatrix m = bench_matrix(side, fill);
    PresenceLists lists = to_presence_lists(m);
    Rng rng(1);
    TradeScratch scratch;
    for (auto _ : state) {
        const auto res = extract_pair(lists, rng, TradeCountMode::uniform_1_to_n, scratch);
        benchmark::DoNotOptimize(res.t);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_pair_extraction)
    ->ArgsProduct({{100, 1000}, {10, 50, 90}})
    ->ArgNames({"side", "fill%"});

void BM_attempt_swap(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const double fill = static_cast<double>(state.range(1)) / 100.0;
    BinaryMatrix m = bench_matrix(side, fill);
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(attempt_swap(m, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_attempt_swap)
    ->ArgsProduct({{100, 1000}, {10, 50, 90}})
    ->ArgNames({"side", "fill%"});

void BM_randomize_default(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const BinaryMatrix m = bench_matrix(side, 0.5);
    RandomizerConfig cfg;
    cfg.n_extractions = default_extraction_count(m);
    cfg.seed = 7;
    for (auto _ : state) {
        BinaryMatrix null = randomize(m, cfg);
        benchmark::DoNotOptimize(null);
        cfg.seed = mix_seed(cfg.seed, 1);
    }
}
BENCHMARK(BM_randomize_default)->Arg(100)->Arg(500)->Arg(2000)->ArgNames({"side"});

void BM_total_checkerboards(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const BinaryMatrix m = bench_matrix(side, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(total_checkerboards(m));
    }
}
BENCHMARK(BM_total_checkerboards)->Arg(15)->Arg(100)->Arg(500)->ArgNames({"side"});

void BM_enumerate_small(benchmark::State& state) {
    const Margins margins{{1, 2, 1}, {1, 2, 1}};
    for (auto _ : state) {
        auto configs = enumerate_margin_fixed(margins);
        benchmark::DoNotOptimize(configs.size());
    }
}
BENCHMARK(BM_enumerate_small);

}  // namespace

BENCHMARK_MAIN();

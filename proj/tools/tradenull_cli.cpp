// tradenull: fixed-margin randomization of presence-absence matrices.
//
// Subcommands: randomize, stats, significance, uniformity, benchmark, gen.
// Every run is replayable: the seed (supplied or drawn from entropy) is
// always echoed in the output metadata.
//
// Exit codes: 0 success, 2 usage error, 3 parse/format or I/O error,
// 4 internal invariant violation.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tradenull/io.hpp"
#include "tradenull/labkit.hpp"
#include "tradenull/metrics.hpp"
#include "tradenull/swapper.hpp"
#include "tradenull/trader.hpp"

namespace fs = std::filesystem;
using namespace tradenull;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInternal = 4;

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string fmt_double(double v, int decimals = -1) {
    char buf[64];
    if (decimals >= 0) {
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
        return buf;
    }
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string join_totals(const std::vector<std::int32_t>& totals) {
    std::string out;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(totals[i]);
    }
    return out;
}

// flat `key = value` metadata block, printed and/or written next to outputs
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }

    void print(std::ostream& out) const {
        for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
    }

    void write(const fs::path& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        print(out);
    }
};

struct InputOptions {
    std::string path;
    std::string format = "auto";

    MatrixFormat resolved_format() const {
        return format == "auto" ? format_from_extension(path) : format_from_name(format);
    }

    BinaryMatrix load() const { return read_matrix(path, resolved_format()); }
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("-i,--input", in.path, "input matrix file")->required();
    cmd->add_option("-f,--format", in.format, "matrix format: auto, dense, csv, sparse")
        ->check(CLI::IsMember({"auto", "dense", "csv", "sparse"}))
        ->capture_default_str();
}

TradeCountMode trade_mode_from(const std::string& name) {
    return name == "shuffle" ? TradeCountMode::shuffle_reassign : TradeCountMode::uniform_1_to_n;
}

std::string extension_for(MatrixFormat format) {
    return format == MatrixFormat::csv ? ".csv" : ".txt";
}

std::pair<int, int> parse_size(const std::string& spec) {
    const auto x = spec.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--size", "expected ROWSxCOLS, e.g. 100x100");
    int rows = 0, cols = 0;
    try {
        rows = std::stoi(spec.substr(0, x));
        cols = std::stoi(spec.substr(x + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--size", "expected ROWSxCOLS, e.g. 100x100");
    }
    if (rows < 1 || cols < 1) throw CLI::ValidationError("--size", "dimensions must be positive");
    return {rows, cols};
}

// ---------------------------------------------------------------- randomize

struct RandomizeArgs {
    InputOptions in;
    std::int64_t k = 1;
    std::optional<std::uint64_t> seed;
    std::string algorithm = "trade";
    std::string trade_mode = "uniform";
    std::optional<std::int64_t> extractions;
    std::optional<std::int64_t> swaps;
    std::string count_mode = "attempted";
    std::int64_t burn_in = 30000;
    std::string out_dir = ".";
    bool stream = false;
    int threads = 1;
};

int run_randomize(const RandomizeArgs& args) {
    const BinaryMatrix m = args.in.load();
    const MatrixFormat format = args.in.resolved_format();
    const std::uint64_t seed = args.seed ? *args.seed : entropy_seed();
    const Margins mg = margins(m);

    Metadata meta;
    meta.add("command", std::string("randomize"));
    meta.add("input", args.in.path);
    meta.add("format", format_name(format));
    meta.add("n_rows", static_cast<std::int64_t>(m.n_rows()));
    meta.add("n_cols", static_cast<std::int64_t>(m.n_cols()));
    meta.add("row_totals", join_totals(mg.row_totals));
    meta.add("col_totals", join_totals(mg.col_totals));
    meta.add("algorithm", args.algorithm);
    meta.add("k", args.k);
    meta.add("seed", seed);

    std::vector<BinaryMatrix> nulls;
    if (args.algorithm == "trade") {
        RandomizerConfig cfg;
        cfg.n_extractions = args.extractions ? *args.extractions : default_extraction_count(m);
        cfg.mode = trade_mode_from(args.trade_mode);
        cfg.seed = seed;
        meta.add("trade_mode", args.trade_mode);
        meta.add("extractions", cfg.n_extractions);
        nulls = batch_randomize(m, args.k, cfg, args.threads);
    } else if (args.algorithm == "indswap") {
        SwapConfig cfg;
        cfg.n_swaps = args.swaps ? *args.swaps : recommended_swap_count(m);
        cfg.count_mode = args.count_mode == "successful" ? SwapCountMode::successful
                                                         : SwapCountMode::attempted;
        meta.add("swaps", cfg.n_swaps);
        meta.add("count_mode", args.count_mode);
        nulls.reserve(args.k);
        for (std::int64_t i = 0; i < args.k; ++i) {
            cfg.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
            nulls.push_back(independent_swap(m, cfg));
        }
    } else {  // seqswap
        SwapConfig cfg;
        cfg.burn_in_attempts = args.burn_in;
        cfg.seed = seed;
        meta.add("burn_in_attempts", cfg.burn_in_attempts);
        nulls = sequential_swap_ensemble(m, args.k, cfg);
    }

    for (const auto& null : nulls)
        if (margins(null) != mg)
            throw MarginViolation("randomize: generated null does not preserve margins");

    if (args.stream) {
        for (std::size_t i = 0; i < nulls.size(); ++i) {
            if (i) std::cout << "\n";
            format_matrix(nulls[i], std::cout, format);
        }
        meta.print(std::cerr);
        return 0;
    }

    fs::create_directories(args.out_dir);
    const std::string ext = extension_for(format);
    for (std::size_t i = 0; i < nulls.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "null_%05zu%s", i, ext.c_str());
        write_matrix(nulls[i], fs::path(args.out_dir) / name, format);
    }
    meta.write(fs::path(args.out_dir) / "metadata.txt");
    meta.print(std::cout);
    std::cout << "written = " << nulls.size() << " files to " << args.out_dir << "\n";
    return 0;
}

// -------------------------------------------------------------------- stats

int run_stats(const InputOptions& in) {
    const BinaryMatrix m = in.load();
    const Margins mg = margins(m);
    std::cout << "n_rows = " << m.n_rows() << "\n"
              << "n_cols = " << m.n_cols() << "\n"
              << "presences = " << m.count_ones() << "\n"
              << "fill = " << fmt_double(fill_ratio(m), 4) << "\n"
              << "checkerboards = " << total_checkerboards(m) << "\n"
              << "row_totals = " << join_totals(mg.row_totals) << "\n"
              << "col_totals = " << join_totals(mg.col_totals) << "\n";
    return 0;
}

// ------------------------------------------------------------- significance

struct SignificanceArgs {
    InputOptions in;
    std::int64_t k = 999;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> extractions;
    std::string trade_mode = "uniform";
    int threads = 1;
};

int run_significance(const SignificanceArgs& args) {
    const BinaryMatrix m = args.in.load();
    RandomizerConfig cfg;
    cfg.n_extractions = args.extractions ? *args.extractions : default_extraction_count(m);
    cfg.mode = trade_mode_from(args.trade_mode);
    cfg.seed = args.seed ? *args.seed : entropy_seed();

    const auto observed = static_cast<double>(total_checkerboards(m));
    const auto nulls = batch_randomize(m, args.k, cfg, args.threads);
    std::vector<double> null_cu;
    null_cu.reserve(nulls.size());
    for (const auto& null : nulls) null_cu.push_back(static_cast<double>(total_checkerboards(null)));

    double mean = 0.0;
    for (double v : null_cu) mean += v;
    mean /= static_cast<double>(null_cu.size());
    double var = 0.0;
    for (double v : null_cu) var += (v - mean) * (v - mean);
    var = null_cu.size() > 1 ? var / static_cast<double>(null_cu.size() - 1) : 0.0;

    std::cout << "observed_cu = " << static_cast<std::int64_t>(observed) << "\n"
              << "k = " << args.k << "\n"
              << "null_mean = " << fmt_double(mean) << "\n"
              << "null_sd = " << fmt_double(std::sqrt(var)) << "\n"
              << "p_greater = " << fmt_double(empirical_p(observed, null_cu, Tail::greater)) << "\n"
              << "p_less = " << fmt_double(empirical_p(observed, null_cu, Tail::less)) << "\n"
              << "extractions = " << cfg.n_extractions << "\n"
              << "seed = " << cfg.seed << "\n";
    return 0;
}

// --------------------------------------------------------------- uniformity

struct UniformityArgs {
    InputOptions in;
    std::int64_t k = 1000;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> extractions;
    std::string trade_mode = "uniform";
    int reps = 1;
    int threads = 1;
};

int run_uniformity(const UniformityArgs& args) {
    const BinaryMatrix m = args.in.load();
    RandomizerConfig cfg;
    cfg.n_extractions = args.extractions ? *args.extractions : default_extraction_count(m);
    cfg.mode = trade_mode_from(args.trade_mode);
    const std::uint64_t base_seed = args.seed ? *args.seed : entropy_seed();

    std::cout << "nulls_per_rep = " << args.k << "\n"
              << "extractions = " << cfg.n_extractions << "\n"
              << "seed = " << base_seed << "\n"
              << "reps = " << args.reps << "\n";

    double p_sum = 0.0;
    for (int rep = 0; rep < args.reps; ++rep) {
        cfg.seed = args.reps == 1 ? base_seed : mix_seed(base_seed, static_cast<std::uint64_t>(rep));
        const auto [census, chi] = uniformity_experiment(m, args.k, cfg, args.threads);
        if (rep == 0) {
            std::cout << "configurations = " << census.total_configs << "\n"
                      << "expected_per_config = " << fmt_double(census.expected_per_config) << "\n";
            if (census.low_expected)
                std::cerr << "warning: expected count per configuration is below 5; "
                             "the chi-square approximation is unreliable\n";
        }
        if (args.reps == 1) {
            int index = 0;
            for (const auto& [key, count] : census.frequencies)
                std::cout << "config_" << index++ << "_count = " << count << "\n";
        }
        std::cout << "rep_" << rep << "_statistic = " << fmt_double(chi.statistic) << "\n"
                  << "rep_" << rep << "_df = " << chi.df << "\n"
                  << "rep_" << rep << "_p = " << fmt_double(chi.p_value)
                  << (chi.degenerate ? " (degenerate: single configuration)" : "") << "\n";
        p_sum += chi.p_value;
    }
    if (args.reps > 1)
        std::cout << "mean_p = " << fmt_double(p_sum / static_cast<double>(args.reps)) << "\n";
    return 0;
}

// ---------------------------------------------------------------- benchmark

struct BenchCommonArgs {
    std::optional<std::string> input;
    std::string format = "auto";
    std::string size = "100x100";
    double fill = 0.5;
    std::optional<std::uint64_t> seed;
    std::string out_prefix = "bench";
};

BinaryMatrix bench_matrix(const BenchCommonArgs& args, std::uint64_t seed) {
    if (args.input) {
        InputOptions in;
        in.path = *args.input;
        in.format = args.format;
        return in.load();
    }
    const auto [rows, cols] = parse_size(args.size);
    Rng rng(mix_seed(seed, 0xF1117));
    return gen_random_fill(rows, cols, args.fill, rng);
}

int run_bench_convergence(const BenchCommonArgs& common, std::int64_t from, std::int64_t to,
                          std::int64_t step, std::int64_t set_size, int window, double rel_tol,
                          int threads) {
    const std::uint64_t seed = common.seed ? *common.seed : entropy_seed();
    const BinaryMatrix m = bench_matrix(common, seed);
    RandomizerConfig cfg;
    cfg.seed = seed;
    const ExperimentSeries series =
        convergence_experiment(m, set_size, ArithmeticSchedule{from, to, step}, cfg, threads);
    const fs::path out = common.out_prefix + "_convergence.csv";
    write_csv(series, out);
    std::cout << "seed = " << seed << "\n"
              << "points = " << series.x.size() << "\n"
              << "csv = " << out.string() << "\n";
    if (static_cast<int>(series.x.size()) >= window) {
        const auto stable = stability_detect(series, window, rel_tol);
        if (stable)
            std::cout << "stable_at = " << *stable << "\n";
        else
            std::cout << "stable_at = none\n";
    } else {
        std::cout << "stable_at = n/a (series shorter than window " << window << ")\n";
    }
    return 0;
}

int run_bench_perturbation(const BenchCommonArgs& common, std::int64_t ops, std::int64_t stride) {
    const std::uint64_t seed = common.seed ? *common.seed : entropy_seed();
    const BinaryMatrix m = bench_matrix(common, seed);
    std::cout << "seed = " << seed << "\n";
    for (NullAlgorithm alg : {NullAlgorithm::trade, NullAlgorithm::swap}) {
        const ExperimentSeries series = perturbation_curve(m, alg, ops, stride, seed);
        const fs::path out = common.out_prefix + "_perturbation_" + series.label + ".csv";
        write_csv(series, out);
        std::cout << series.label << "_final_percent = " << fmt_double(series.mean.back(), 2)
                  << "\n"
                  << series.label << "_csv = " << out.string() << "\n";
    }
    return 0;
}

int run_bench_success(const BenchCommonArgs& common, const std::vector<double>& fills,
                      std::int64_t attempts, std::int64_t stride) {
    const std::uint64_t seed = common.seed ? *common.seed : entropy_seed();
    std::cout << "seed = " << seed << "\n";
    const auto [rows, cols] = parse_size(common.size);
    for (double fill : fills) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(fill * 1e6)));
        const BinaryMatrix m = gen_random_fill(rows, cols, fill, rng);
        for (NullAlgorithm alg : {NullAlgorithm::trade, NullAlgorithm::swap}) {
            const ExperimentSeries series = success_rate_curve(m, alg, attempts, seed, stride);
            const std::string tag = series.label + "_fill" + fmt_double(fill, 2);
            write_csv(series, fs::path(common.out_prefix + "_success_" + tag + ".csv"));
            const double successes = series.mean.back();
            std::cout << tag << "_successes = " << static_cast<std::int64_t>(successes) << "\n";
            if (successes > 0)
                std::cout << tag << "_attempts_per_success = "
                          << fmt_double(static_cast<double>(attempts) / successes, 3) << "\n";
        }
    }
    return 0;
}

int run_bench_timing(const BenchCommonArgs& common, std::int64_t ops, std::int64_t stride) {
    const std::uint64_t seed = common.seed ? *common.seed : entropy_seed();
    const BinaryMatrix m = bench_matrix(common, seed);
    std::cout << "seed = " << seed << "\n";
    for (NullAlgorithm alg : {NullAlgorithm::trade, NullAlgorithm::swap}) {
        const ExperimentSeries series = timing_curve(m, alg, ops, stride, seed);
        const fs::path out = common.out_prefix + "_timing_" + series.label + ".csv";
        write_csv(series, out);
        std::cout << series.label << "_kernel_seconds = "
                  << fmt_double(static_cast<double>(series.x.back()) * 1e-9, 6) << "\n"
                  << series.label << "_csv = " << out.string() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------- gen

int run_gen_lowcb(std::optional<std::uint64_t> seed_opt, const std::string& out,
                  const std::string& format_name_str) {
    const std::uint64_t seed = seed_opt ? *seed_opt : entropy_seed();
    Rng rng(seed);
    const auto [m, target_k] = gen_low_checkerboard(rng);
    const MatrixFormat format = format_from_name(format_name_str);
    if (out.empty() || out == "-")
        format_matrix(m, std::cout, format);
    else
        write_matrix(m, out, format);
    std::cerr << "n_rows = " << m.n_rows() << "\n"
              << "n_cols = " << m.n_cols() << "\n"
              << "target_k = " << target_k << "\n"
              << "checkerboards = " << total_checkerboards(m) << "\n"
              << "seed = " << seed << "\n";
    return 0;
}

int run_gen_fill(int rows, int cols, double fill, std::optional<std::uint64_t> seed_opt,
                 const std::string& out, const std::string& format_name_str) {
    const std::uint64_t seed = seed_opt ? *seed_opt : entropy_seed();
    Rng rng(seed);
    const BinaryMatrix m = gen_random_fill(rows, cols, fill, rng);
    const MatrixFormat format = format_from_name(format_name_str);
    if (out.empty() || out == "-")
        format_matrix(m, std::cout, format);
    else
        write_matrix(m, out, format);
    std::cerr << "fill = " << fmt_double(fill_ratio(m), 4) << "\n"
              << "seed = " << seed << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-margin randomization of binary presence-absence matrices"};
    app.require_subcommand(1);

    // randomize
    RandomizeArgs rand_args;
    auto* rand_cmd = app.add_subcommand("randomize", "generate margin-preserving null matrices");
    add_input_options(rand_cmd, rand_args.in);
    rand_cmd->add_option("-k,--nulls", rand_args.k, "number of null matrices")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rand_cmd->add_option("--seed", rand_args.seed, "RNG seed (default: fresh entropy)");
    rand_cmd->add_option("--algorithm", rand_args.algorithm, "trade, indswap or seqswap")
        ->check(CLI::IsMember({"trade", "indswap", "seqswap"}))
        ->capture_default_str();
    rand_cmd->add_option("--extractions", rand_args.extractions,
                         "pair extractions per null (trade; default max(1000, 5*max_dim))");
    rand_cmd->add_option("--trade-mode", rand_args.trade_mode, "uniform or shuffle")
        ->check(CLI::IsMember({"uniform", "shuffle"}))
        ->capture_default_str();
    rand_cmd->add_option("--swaps", rand_args.swaps,
                         "swaps per null (indswap; default recommended count)");
    rand_cmd->add_option("--count-mode", rand_args.count_mode, "attempted or successful (indswap)")
        ->check(CLI::IsMember({"attempted", "successful"}))
        ->capture_default_str();
    rand_cmd->add_option("--burnin", rand_args.burn_in, "burn-in attempts (seqswap)")
        ->capture_default_str();
    rand_cmd->add_option("-o,--out-dir", rand_args.out_dir, "output directory")
        ->capture_default_str();
    rand_cmd->add_flag("--stream", rand_args.stream,
                       "write nulls to stdout separated by blank lines (metadata on stderr)");
    rand_cmd->add_option("--threads", rand_args.threads, "worker threads (output is unaffected)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // stats
    InputOptions stats_in;
    auto* stats_cmd = app.add_subcommand("stats", "dimensions, fill, margins, checkerboards");
    add_input_options(stats_cmd, stats_in);

    // significance
    SignificanceArgs sig_args;
    auto* sig_cmd = app.add_subcommand(
        "significance", "empirical p-value of the observed checkerboard count");
    add_input_options(sig_cmd, sig_args.in);
    sig_cmd->add_option("-k,--nulls", sig_args.k, "null ensemble size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sig_cmd->add_option("--seed", sig_args.seed, "RNG seed (default: fresh entropy)");
    sig_cmd->add_option("--extractions", sig_args.extractions, "pair extractions per null");
    sig_cmd->add_option("--trade-mode", sig_args.trade_mode, "uniform or shuffle")
        ->check(CLI::IsMember({"uniform", "shuffle"}));
    sig_cmd->add_option("--threads", sig_args.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    // uniformity
    UniformityArgs uni_args;
    auto* uni_cmd = app.add_subcommand(
        "uniformity", "configuration census and chi-square uniformity test");
    add_input_options(uni_cmd, uni_args.in);
    uni_cmd->add_option("-k,--nulls", uni_args.k, "nulls per repetition")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    uni_cmd->add_option("--seed", uni_args.seed, "RNG seed (default: fresh entropy)");
    uni_cmd->add_option("--extractions", uni_args.extractions, "pair extractions per null");
    uni_cmd->add_option("--trade-mode", uni_args.trade_mode, "uniform or shuffle")
        ->check(CLI::IsMember({"uniform", "shuffle"}));
    uni_cmd->add_option("--reps", uni_args.reps, "repetitions of the whole experiment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    uni_cmd->add_option("--threads", uni_args.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "experiment drivers emitting CSV series");
    bench_cmd->require_subcommand(1);

    BenchCommonArgs conv_common;
    std::int64_t conv_from = 0, conv_to = 10000, conv_step = 100, conv_set = 1000;
    int conv_window = 100, conv_threads = 1;
    double conv_tol = 0.01;
    auto* conv_cmd =
        bench_cmd->add_subcommand("convergence", "mean checkerboards vs extraction count");
    conv_cmd->add_option("-i,--input", conv_common.input, "input matrix (default: generated)");
    conv_cmd->add_option("-f,--format", conv_common.format, "input format")
        ->check(CLI::IsMember({"auto", "dense", "csv", "sparse"}));
    conv_cmd->add_option("--size", conv_common.size, "generated matrix size ROWSxCOLS")
        ->capture_default_str();
    conv_cmd->add_option("--fill", conv_common.fill, "generated matrix fill")
        ->capture_default_str();
    conv_cmd->add_option("--from", conv_from, "schedule start")->capture_default_str();
    conv_cmd->add_option("--to", conv_to, "schedule stop")->capture_default_str();
    conv_cmd->add_option("--step", conv_step, "schedule common difference")->capture_default_str();
    conv_cmd->add_option("--set-size", conv_set, "nulls per schedule point")
        ->capture_default_str();
    conv_cmd->add_option("--window", conv_window, "stability window (points)")
        ->capture_default_str();
    conv_cmd->add_option("--rel-tol", conv_tol, "stability relative tolerance")
        ->capture_default_str();
    conv_cmd->add_option("--seed", conv_common.seed, "RNG seed");
    conv_cmd->add_option("--threads", conv_threads, "worker threads")->check(CLI::PositiveNumber);
    conv_cmd->add_option("-o,--out", conv_common.out_prefix, "output file prefix")
        ->capture_default_str();

    BenchCommonArgs pert_common;
    std::int64_t pert_ops = 100000, pert_stride = 500;
    auto* pert_cmd =
        bench_cmd->add_subcommand("perturbation", "cells changed vs operations, trade and swap");
    pert_cmd->add_option("-i,--input", pert_common.input, "input matrix (default: generated)");
    pert_cmd->add_option("-f,--format", pert_common.format, "input format")
        ->check(CLI::IsMember({"auto", "dense", "csv", "sparse"}));
    pert_cmd->add_option("--size", pert_common.size, "generated matrix size ROWSxCOLS")
        ->capture_default_str();
    pert_cmd->add_option("--fill", pert_common.fill, "generated matrix fill")
        ->capture_default_str();
    pert_cmd->add_option("--ops", pert_ops, "operations per algorithm")->capture_default_str();
    pert_cmd->add_option("--stride", pert_stride, "sampling stride")->capture_default_str();
    pert_cmd->add_option("--seed", pert_common.seed, "RNG seed");
    pert_cmd->add_option("-o,--out", pert_common.out_prefix, "output file prefix")
        ->capture_default_str();

    BenchCommonArgs succ_common;
    std::vector<double> succ_fills{0.1, 0.3, 0.5, 0.7, 0.9};
    std::int64_t succ_attempts = 1000000, succ_stride = 1000;
    auto* succ_cmd =
        bench_cmd->add_subcommand("success", "successful vs attempted operations per fill");
    succ_cmd->add_option("--size", succ_common.size, "generated matrix size ROWSxCOLS")
        ->capture_default_str();
    succ_cmd->add_option("--fills", succ_fills, "fill values")->delimiter(',');
    succ_cmd->add_option("--attempts", succ_attempts, "attempts per algorithm and fill")
        ->capture_default_str();
    succ_cmd->add_option("--stride", succ_stride, "sampling stride")->capture_default_str();
    succ_cmd->add_option("--seed", succ_common.seed, "RNG seed");
    succ_cmd->add_option("-o,--out", succ_common.out_prefix, "output file prefix")
        ->capture_default_str();

    BenchCommonArgs time_common;
    std::int64_t time_ops = 100000, time_stride = 500;
    auto* time_cmd =
        bench_cmd->add_subcommand("timing", "perturbation vs kernel time, trade and swap");
    time_cmd->add_option("-i,--input", time_common.input, "input matrix (default: generated)");
    time_cmd->add_option("-f,--format", time_common.format, "input format")
        ->check(CLI::IsMember({"auto", "dense", "csv", "sparse"}));
    time_cmd->add_option("--size", time_common.size, "generated matrix size ROWSxCOLS")
        ->capture_default_str();
    time_cmd->add_option("--fill", time_common.fill, "generated matrix fill")
        ->capture_default_str();
    time_cmd->add_option("--ops", time_ops, "operations per algorithm")->capture_default_str();
    time_cmd->add_option("--stride", time_stride, "sampling stride")->capture_default_str();
    time_cmd->add_option("--seed", time_common.seed, "RNG seed");
    time_cmd->add_option("-o,--out", time_common.out_prefix, "output file prefix")
        ->capture_default_str();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "matrix generators");
    gen_cmd->require_subcommand(1);

    std::optional<std::uint64_t> lowcb_seed;
    std::string lowcb_out, lowcb_format = "dense";
    auto* lowcb_cmd = gen_cmd->add_subcommand(
        "lowcb", "small matrix with 1..5 checkerboards and full row/column coverage");
    lowcb_cmd->add_option("--seed", lowcb_seed, "RNG seed (default: fresh entropy)");
    lowcb_cmd->add_option("-o,--out", lowcb_out, "output file (default: stdout)");
    lowcb_cmd->add_option("-f,--format", lowcb_format, "dense, csv or sparse")
        ->check(CLI::IsMember({"dense", "csv", "sparse"}))
        ->capture_default_str();

    int fill_rows = 0, fill_cols = 0;
    double fill_value = 0.5;
    std::optional<std::uint64_t> fill_seed;
    std::string fill_out, fill_format = "dense";
    auto* fill_cmd = gen_cmd->add_subcommand("fill", "independent-cell random matrix");
    fill_cmd->add_option("--rows", fill_rows, "rows")->required()->check(CLI::PositiveNumber);
    fill_cmd->add_option("--cols", fill_cols, "columns")->required()->check(CLI::PositiveNumber);
    fill_cmd->add_option("--fill", fill_value, "probability a cell is 1")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    fill_cmd->add_option("--seed", fill_seed, "RNG seed (default: fresh entropy)");
    fill_cmd->add_option("-o,--out", fill_out, "output file (default: stdout)");
    fill_cmd->add_option("-f,--format", fill_format, "dense, csv or sparse")
        ->check(CLI::IsMember({"dense", "csv", "sparse"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (rand_cmd->parsed()) return run_randomize(rand_args);
        if (stats_cmd->parsed()) return run_stats(stats_in);
        if (sig_cmd->parsed()) return run_significance(sig_args);
        if (uni_cmd->parsed()) return run_uniformity(uni_args);
        if (bench_cmd->parsed()) {
            if (conv_cmd->parsed())
                return run_bench_convergence(conv_common, conv_from, conv_to, conv_step, conv_set,
                                             conv_window, conv_tol, conv_threads);
            if (pert_cmd->parsed()) return run_bench_perturbation(pert_common, pert_ops, pert_stride);
            if (succ_cmd->parsed())
                return run_bench_success(succ_common, succ_fills, succ_attempts, succ_stride);
            if (time_cmd->parsed()) return run_bench_timing(time_common, time_ops, time_stride);
        }
        if (gen_cmd->parsed()) {
            if (lowcb_cmd->parsed()) return run_gen_lowcb(lowcb_seed, lowcb_out, lowcb_format);
            if (fill_cmd->parsed())
                return run_gen_fill(fill_rows, fill_cols, fill_value, fill_seed, fill_out,
                                    fill_format);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const EnumerationOverflow& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: the configuration family is too large to enumerate; "
                     "use a smaller matrix\n";
        return kExitUsage;
    } catch (const NoSwapPossible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}

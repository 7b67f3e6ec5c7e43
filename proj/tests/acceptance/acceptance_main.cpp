// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// hard criterion fails. Seeds are fixed so every run is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tradenull/labkit.hpp"
#include "tradenull/metrics.hpp"
#include "tradenull/swapper.hpp"
#include "tradenull/trader.hpp"

using namespace tradenull;
using Clock = std::chrono::steady_clock;

namespace {

int hard_failures = 0;

int worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, bool pass, bool soft, const std::string& name, const std::string& detail,
            double elapsed) {
    const char* verdict = pass ? "PASS" : (soft ? "PASS (soft)" : "FAIL");
    if (!pass && !soft) ++hard_failures;
    std::printf("%-11s C%-2d %-28s %s [%.2fs]\n", verdict, id, name.c_str(), detail.c_str(),
                elapsed);
    std::fflush(stdout);
}

std::string fmt(double v, int decimals = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_enumeration() {
    const auto start = Clock::now();
    const auto configs = enumerate_margin_fixed({{1, 2, 1}, {1, 2, 1}});
    const double elapsed = seconds_since(start);
    const bool pass = configs.size() == 5 && elapsed < 0.1;
    report(1, pass, false, "3x3 [1,2,1] enumeration",
           "configurations=" + std::to_string(configs.size()) + " (want 5), runtime " +
               fmt(elapsed, 4) + "s (< 0.1s)",
           elapsed);
}

void criterion_2_uniformity_small() {
    const auto start = Clock::now();
    const BinaryMatrix m = enumerate_margin_fixed({{1, 2, 1}, {1, 2, 1}}).front();
    const int reps = 100;
    const std::int64_t k_nulls = 1000;
    RandomizerConfig cfg;
    cfg.n_extractions = 1000;

    double p_sum = 0.0;
    int low_p = 0;
    for (int rep = 0; rep < reps; ++rep) {
        cfg.seed = mix_seed(0xACC2, static_cast<std::uint64_t>(rep));
        const auto [census, chi] = uniformity_experiment(m, k_nulls, cfg, worker_threads());
        p_sum += chi.p_value;
        if (chi.p_value < 0.01) ++low_p;
    }
    const double mean_p = p_sum / reps;
    const double elapsed = seconds_since(start);
    const bool pass = mean_p >= 0.45 && mean_p <= 0.80 && low_p <= 3 && elapsed < 30.0;
    report(2, pass, false, "uniformity on 3x3 family",
           "mean p=" + fmt(mean_p) + " (want [0.45,0.80]), reps with p<0.01: " +
               std::to_string(low_p) + "/100 (allow <=3)",
           elapsed);
}

void criterion_3_low_checkerboard() {
    const auto start = Clock::now();
    Rng gen_rng(0xACC3);
    RandomizerConfig cfg;
    cfg.n_extractions = 10000;

    double p_sum = 0.0, p_min = 1.0;
    const int n_matrices = 20;
    for (int i = 0; i < n_matrices; ++i) {
        const auto [m, target_k] = gen_low_checkerboard(gen_rng);
        cfg.seed = mix_seed(0xACC3F00D, static_cast<std::uint64_t>(i));
        const auto [census, chi] = uniformity_experiment(m, 1000, cfg, worker_threads());
        p_sum += chi.p_value;
        p_min = std::min(p_min, chi.p_value);
    }
    const double mean_p = p_sum / n_matrices;
    const double elapsed = seconds_since(start);
    const bool pass = p_min >= 0.01 && mean_p >= 0.35 && elapsed < 300.0;
    report(3, pass, false, "uniformity on low-CU set",
           "min p=" + fmt(p_min) + " (want >=0.01), mean p=" + fmt(mean_p) + " (want >=0.35), 20 "
           "matrices x 1000 nulls x 10000 extractions",
           elapsed);
}

void criterion_4_margin_preservation() {
    const auto start = Clock::now();
    Rng rng(0xACC4);
    int failures = 0;
    int seq_runs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int rows = 2 + static_cast<int>(rng.bounded(49));
        const int cols = 2 + static_cast<int>(rng.bounded(49));
        const double fill = 0.05 + 0.90 * rng.real53();
        const BinaryMatrix m = gen_random_fill(rows, cols, fill, rng);
        const Margins before = margins(m);
        const std::uint64_t seed = rng.next_u64();

        RandomizerConfig trade_cfg;
        trade_cfg.n_extractions = 150;
        trade_cfg.seed = seed;
        trade_cfg.mode =
            trial % 2 ? TradeCountMode::uniform_1_to_n : TradeCountMode::shuffle_reassign;
        if (margins(randomize(m, trade_cfg)) != before) ++failures;

        SwapConfig ind_cfg;
        ind_cfg.n_swaps = 500;
        ind_cfg.seed = seed;
        if (margins(independent_swap(m, ind_cfg)) != before) ++failures;

        if (total_checkerboards(m) > 0) {
            ++seq_runs;
            SwapConfig seq_cfg;
            seq_cfg.burn_in_attempts = 300;
            seq_cfg.seed = seed;
            for (const auto& null : sequential_swap_ensemble(m, 3, seq_cfg))
                if (margins(null) != before) ++failures;
        }
    }
    const double elapsed = seconds_since(start);
    report(4, failures == 0, false, "margin preservation",
           "1000 cases x {trade, indswap, seqswap}: " + std::to_string(failures) +
               " violations (want 0; seqswap ran on " + std::to_string(seq_runs) + ")",
           elapsed);
}

void criterion_5_oracle_equivalence() {
    const auto start = Clock::now();
    Rng rng(0xACC5);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const BinaryMatrix m = gen_random_fill(1 + static_cast<int>(rng.bounded(15)),
                                               1 + static_cast<int>(rng.bounded(15)),
                                               rng.real53(), rng);
        if (total_checkerboards(m) != brute_force_checkerboards(m)) ++mismatches;
    }
    const double elapsed = seconds_since(start);
    report(5, mismatches == 0, false, "checkerboard oracle",
           "500 matrices <=15x15: " + std::to_string(mismatches) + " mismatches (want 0)",
           elapsed);
}

void criterion_6_perturbation_plateau() {
    const auto start = Clock::now();
    Rng rng(0xACC6);
    const BinaryMatrix m = gen_random_fill(100, 100, 0.5, rng);

    const ExperimentSeries trade = perturbation_curve(m, NullAlgorithm::trade, 500, 50, 0xACC6A);
    const double trade_at_500 = *std::max_element(trade.mean.begin(), trade.mean.end());

    const ExperimentSeries swap = perturbation_curve(m, NullAlgorithm::swap, 100000, 1000, 0xACC6B);
    double swap_at_1000 = 0.0, swap_at_20000 = 0.0;
    for (std::size_t i = 0; i < swap.x.size(); ++i) {
        if (swap.x[i] == 1000) swap_at_1000 = swap.mean[i];
        if (swap.x[i] == 20000) swap_at_20000 = swap.mean[i];
    }
    const double swap_plateau = swap.mean.back();

    const double elapsed = seconds_since(start);
    const bool pass = trade_at_500 >= 48.0 && swap_at_1000 < 40.0 &&
                      swap_at_20000 <= swap_plateau - 2.0 && elapsed < 60.0;
    report(6, pass, false, "perturbation plateau",
           "trade@500=" + fmt(trade_at_500, 1) + "% (want >=48), swap@1000=" +
               fmt(swap_at_1000, 1) + "% (want <40), swap@20000=" + fmt(swap_at_20000, 1) +
               "% vs plateau " + fmt(swap_plateau, 1) + "% (want gap >=2)",
           elapsed);
}

void criterion_7_success_rates() {
    const auto start = Clock::now();
    const std::vector<double> fills{0.1, 0.3, 0.5, 0.7, 0.9};
    const std::int64_t attempts = 1000000;

    bool pass = true;
    std::string detail;
    for (double fill : fills) {
        Rng gen(mix_seed(0xACC7, static_cast<std::uint64_t>(fill * 100)));
        const BinaryMatrix m = gen_random_fill(100, 100, fill, gen);

        BinaryMatrix swap_work = m;
        Rng swap_rng(0xACC7A);
        std::int64_t swap_successes = 0;
        for (std::int64_t i = 0; i < attempts; ++i)
            if (attempt_swap(swap_work, swap_rng)) ++swap_successes;
        const double aps = static_cast<double>(attempts) / static_cast<double>(swap_successes);

        PresenceLists lists = to_presence_lists(m);
        Rng trade_rng(0xACC7B);
        TradeScratch scratch;
        std::int64_t trade_successes = 0;
        for (std::int64_t i = 0; i < attempts; ++i)
            if (extract_pair(lists, trade_rng, TradeCountMode::uniform_1_to_n, scratch).t > 0)
                ++trade_successes;
        const double trade_frac =
            static_cast<double>(trade_successes) / static_cast<double>(attempts);

        if (fill == 0.5 && (aps < 6.0 || aps > 10.0)) pass = false;
        if ((fill == 0.1 || fill == 0.9) && (aps < 40.0 || aps > 90.0)) pass = false;
        if (trade_frac < 0.99) pass = false;
        detail += "f" + fmt(fill, 1) + ": swap a/s=" + fmt(aps, 1) + " trade=" +
                  fmt(100.0 * trade_frac, 2) + "%  ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 120.0;
    report(7, pass, false, "success rates", detail + "(want a/s in [6,10]@0.5, [40,90]@0.1/0.9; "
           "trade >=99%)",
           elapsed);
}

void criterion_8_plateau_correctness() {
    const auto start = Clock::now();
    Rng gen_rng(0xACC8);
    int checked = 0, outside = 0;
    std::string worst;
    double worst_ratio = 0.0;

    while (checked < 10) {
        const auto [m, target_k] = gen_low_checkerboard(gen_rng);
        std::vector<BinaryMatrix> configs;
        try {
            configs = enumerate_margin_fixed(margins(m), 10000);
        } catch (const EnumerationOverflow&) {
            continue;  // criterion restricts itself to <= 1e4 configurations
        }
        double exact = 0.0;
        for (const auto& config : configs) exact += static_cast<double>(total_checkerboards(config));
        exact /= static_cast<double>(configs.size());

        RandomizerConfig cfg;
        cfg.seed = mix_seed(0xACC8F00D, static_cast<std::uint64_t>(checked));
        const ArithmeticSchedule schedule{500, 900, 100};
        const ExperimentSeries series =
            convergence_experiment(m, 200, schedule, cfg, worker_threads());

        double plateau = 0.0, pooled_var = 0.0;
        for (std::size_t i = 0; i < series.mean.size(); ++i) {
            plateau += series.mean[i];
            const double sd = (*series.dispersion)[i];
            pooled_var += sd * sd;
        }
        const auto n_points = static_cast<double>(series.mean.size());
        plateau /= n_points;
        pooled_var /= n_points;
        const double se = std::sqrt(pooled_var / (n_points * 200.0));

        const double gap = std::fabs(plateau - exact);
        if (gap > 2.0 * se) ++outside;
        if (se > 0 && gap / se > worst_ratio) {
            worst_ratio = gap / se;
            worst = "worst |plateau-exact|/se=" + fmt(worst_ratio, 2) + " (exact=" + fmt(exact, 2) +
                    ", plateau=" + fmt(plateau, 2) + ")";
        }
        ++checked;
    }
    const double elapsed = seconds_since(start);
    report(8, outside == 0, false, "plateau equals exact mean",
           "10 enumerable matrices: " + std::to_string(outside) + " outside 2 SE (want 0); " +
               worst,
           elapsed);
}

void criterion_9_chi_square_reference() {
    const auto start = Clock::now();
    std::ifstream in(std::string(TRADENULL_TEST_DATA_DIR) + "/chisq_reference.csv");
    if (!in.is_open()) {
        report(9, false, false, "chi-square numerics", "reference table missing", 0.0);
        return;
    }
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    double worst = 0.0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string df_s, stat_s, p_s;
        std::getline(fields, df_s, ',');
        std::getline(fields, stat_s, ',');
        std::getline(fields, p_s, ',');
        const double df = std::stod(df_s);
        const double stat = std::stod(stat_s);
        const double expected = std::stod(p_s);
        const double got = 1.0 - regularized_gamma_p(df / 2.0, stat / 2.0);
        worst = std::max(worst, std::fabs(got - expected));
        ++rows;
    }
    const double elapsed = seconds_since(start);
    const bool pass = rows == 20 * 201 && worst <= 1e-8;
    char worst_s[32];
    std::snprintf(worst_s, sizeof worst_s, "%.2e", worst);
    report(9, pass, false, "chi-square numerics",
           std::string("max |p - reference| = ") + worst_s + " over " + std::to_string(rows) +
               " points (want <= 1e-8)",
           elapsed);
}

void criterion_10_throughput() {
    const auto start = Clock::now();
    Rng rng(0xACC10);
    const BinaryMatrix m = gen_random_fill(2000, 2000, 0.5, rng);
    RandomizerConfig cfg;
    cfg.n_extractions = default_extraction_count(m);  // 10000 for 2000x2000
    cfg.seed = 0xACC10B;

    const auto t0 = Clock::now();
    const BinaryMatrix null = randomize(m, cfg);
    const double randomize_seconds = seconds_since(t0);
    const bool margins_ok = margins(null) == margins(m);

    const double elapsed = seconds_since(start);
    // timing is advisory: report it, but only a margin violation is a hard failure
    const bool within_target = randomize_seconds < 2.0;
    report(10, margins_ok, !within_target, "throughput (soft)",
           "2000x2000 fill-0.5, " + std::to_string(cfg.n_extractions) + " extractions in " +
               fmt(randomize_seconds, 3) + "s (target < 2s, advisory)" +
               (margins_ok ? "" : "; MARGINS VIOLATED"),
           elapsed);
}

void criterion_11_note() {
    std::printf("N/A         C11 source-data convergence     reference datasets are not "
                "distributed with this repository; criterion 8 checks the same plateau claim "
                "against an exact enumeration oracle\n");
}

}  // namespace

int main() {
    std::printf("acceptance suite (%d worker threads)\n", worker_threads());
    criterion_1_enumeration();
    criterion_2_uniformity_small();
    criterion_3_low_checkerboard();
    criterion_4_margin_preservation();
    criterion_5_oracle_equivalence();
    criterion_6_perturbation_plateau();
    criterion_7_success_rates();
    criterion_8_plateau_correctness();
    criterion_9_chi_square_reference();
    criterion_10_throughput();
    criterion_11_note();
    if (hard_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", hard_failures);
    return 1;
}

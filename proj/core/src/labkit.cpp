#include "tradenull/labkit.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "tradenull/metrics.hpp"
#include "tradenull/swapper.hpp"

namespace tradenull {

std::string canonical_key(const BinaryMatrix& m) {
    std::string key;
    key.reserve(8 + static_cast<std::size_t>((m.n_cells() + 7) / 8));
    for (int dim : {m.n_rows(), m.n_cols()}) {
        const auto u = static_cast<std::uint32_t>(dim);
        key.push_back(static_cast<char>(u >> 24));
        key.push_back(static_cast<char>(u >> 16));
        key.push_back(static_cast<char>(u >> 8));
        key.push_back(static_cast<char>(u));
    }
    unsigned byte = 0;
    int used = 0;
    for (int r = 0; r < m.n_rows(); ++r)
        for (int c = 0; c < m.n_cols(); ++c) {
            byte = (byte << 1) | static_cast<unsigned>(m.get(r, c));
            if (++used == 8) {
                key.push_back(static_cast<char>(byte));
                byte = 0;
                used = 0;
            }
        }
    if (used) key.push_back(static_cast<char>(byte << (8 - used)));
    return key;
}

namespace {

// Depth-first cell assignment in row-major order, trying 0 before 1 so the
// output comes out in ascending row-major bit order. Within a row, a branch
// is cut as soon as the row's remaining demand exceeds the columns ahead with
// spare capacity, or a column's remaining capacity exceeds the rows below
// that still have any demand. At every row boundary the residual margins are
// checked against the Gale-Ryser condition, so each surviving node leads to
// at least one configuration and the search stays output-sensitive.
class MarginEnumerator {
public:
    MarginEnumerator(const Margins& margins, std::int64_t limit)
        : rows_(static_cast<int>(margins.row_totals.size())),
          cols_(static_cast<int>(margins.col_totals.size())),
          cap_(margins.col_totals),
          limit_(limit),
          row_totals_(margins.row_totals),
          cells_(static_cast<std::size_t>(rows_) * cols_, 0) {
        rows_below_with_demand_.resize(rows_ + 1, 0);
        for (int r = rows_ - 1; r >= 0; --r)
            rows_below_with_demand_[r] =
                rows_below_with_demand_[r + 1] + (row_totals_[r] > 0 ? 1 : 0);
        // demands of rows r.. sorted descending, with prefix sums, for the
        // boundary checks; rows not yet assigned keep their full totals
        demand_desc_.resize(rows_ + 1);
        demand_prefix_.resize(rows_ + 1);
        for (int r = rows_; r >= 0; --r) {
            std::vector<std::int32_t> d(row_totals_.begin() + r, row_totals_.end());
            std::sort(d.begin(), d.end(), std::greater<>());
            std::vector<std::int64_t> prefix(d.size() + 1, 0);
            for (std::size_t i = 0; i < d.size(); ++i) prefix[i + 1] = prefix[i] + d[i];
            demand_desc_[r] = std::move(d);
            demand_prefix_[r] = std::move(prefix);
        }
        cap_histogram_.resize(rows_ + 1, 0);
    }

    std::vector<BinaryMatrix> run() {
        descend_row(0);
        return std::move(out_);
    }

private:
    // Gale-Ryser: rows r.. with the current column capacities are jointly
    // realizable iff sum_{i<=k} d_i <= sum_j min(cap_j, k) for every k.
    bool residual_feasible(int r) {
        const auto& demand = demand_desc_[r];
        const auto& prefix = demand_prefix_[r];
        if (demand.empty() || demand[0] == 0) return true;
        std::fill(cap_histogram_.begin(), cap_histogram_.end(), 0);
        for (int c = 0; c < cols_; ++c) ++cap_histogram_[cap_[c]];
        // min_sum(k) = sum_j min(cap_j, k), built incrementally over k
        std::int64_t min_sum = 0;
        std::int64_t caps_above_k = cols_ - cap_histogram_[0];
        for (int k = 1; k <= static_cast<int>(demand.size()); ++k) {
            min_sum += caps_above_k;
            if (prefix[k] > min_sum) return false;
            if (k <= rows_) caps_above_k -= cap_histogram_[k];
            if (demand[k - 1] == 0) break;
        }
        return true;
    }

    void descend_row(int r) {
        if (r == rows_) {
            emit();
            return;
        }
        if (!residual_feasible(r)) return;
        std::vector<int> spare(cols_ + 1, 0);
        for (int c = cols_ - 1; c >= 0; --c) spare[c] = spare[c + 1] + (cap_[c] > 0 ? 1 : 0);
        descend_cell(r, 0, row_totals_[r], spare);
    }

    void descend_cell(int r, int c, std::int32_t rem, const std::vector<int>& spare) {
        if (c == cols_) {
            descend_row(r + 1);
            return;
        }
        const int below = rows_below_with_demand_[r + 1];
        if (rem <= spare[c + 1] && cap_[c] <= below) descend_cell(r, c + 1, rem, spare);
        if (rem >= 1 && cap_[c] >= 1 && rem - 1 <= spare[c + 1] && cap_[c] - 1 <= below) {
            cells_[static_cast<std::size_t>(r) * cols_ + c] = 1;
            --cap_[c];
            descend_cell(r, c + 1, rem - 1, spare);
            ++cap_[c];
            cells_[static_cast<std::size_t>(r) * cols_ + c] = 0;
        }
    }

    void emit() {
        if (static_cast<std::int64_t>(out_.size()) >= limit_)
            throw EnumerationOverflow(static_cast<std::int64_t>(out_.size()) + 1, limit_);
        BinaryMatrix m(rows_, cols_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (cells_[static_cast<std::size_t>(r) * cols_ + c]) m.set(r, c, true);
        out_.push_back(std::move(m));
    }

    int rows_;
    int cols_;
    std::vector<std::int32_t> cap_;
    std::int64_t limit_;
    std::vector<std::int32_t> row_totals_;
    std::vector<std::uint8_t> cells_;
    std::vector<int> rows_below_with_demand_;
    std::vector<std::vector<std::int32_t>> demand_desc_;
    std::vector<std::vector<std::int64_t>> demand_prefix_;
    std::vector<std::int64_t> cap_histogram_;
    std::vector<BinaryMatrix> out_;
};

}  // namespace

std::vector<BinaryMatrix> enumerate_margin_fixed(const Margins& margins, std::int64_t limit) {
    if (limit <= 0) throw std::invalid_argument("enumerate_margin_fixed: limit must be positive");
    if (margins.row_totals.empty() || margins.col_totals.empty())
        throw std::invalid_argument("enumerate_margin_fixed: empty margins");
    std::int64_t row_sum = 0, col_sum = 0;
    for (auto t : margins.row_totals) {
        if (t < 0) throw std::invalid_argument("enumerate_margin_fixed: negative row total");
        row_sum += t;
    }
    for (auto t : margins.col_totals) {
        if (t < 0) throw std::invalid_argument("enumerate_margin_fixed: negative column total");
        col_sum += t;
    }
    if (row_sum != col_sum)
        throw std::invalid_argument("enumerate_margin_fixed: row and column sums differ");
    // a total larger than the opposite dimension is infeasible outright
    for (auto t : margins.row_totals)
        if (t > static_cast<std::int64_t>(margins.col_totals.size())) return {};
    for (auto t : margins.col_totals)
        if (t > static_cast<std::int64_t>(margins.row_totals.size())) return {};
    return MarginEnumerator(margins, limit).run();
}

std::pair<ConfigurationCensus, ChiSquareResult> uniformity_experiment(const BinaryMatrix& m,
                                                                      std::int64_t k_nulls,
                                                                      const RandomizerConfig& cfg,
                                                                      int threads) {
    if (k_nulls < 1) throw std::invalid_argument("uniformity_experiment: k_nulls must be >= 1");
    const std::vector<BinaryMatrix> configs = enumerate_margin_fixed(margins(m));

    std::map<std::string, std::int64_t> freq;
    for (const auto& config : configs) freq.emplace(canonical_key(config), 0);

    const std::vector<BinaryMatrix> nulls = batch_randomize(m, k_nulls, cfg, threads);
    for (const auto& null : nulls) {
        const auto it = freq.find(canonical_key(null));
        if (it == freq.end())
            throw MarginViolation(
                "uniformity_experiment: null matrix outside the enumerated configuration set "
                "(margins were not preserved)");
        ++it->second;
    }

    ConfigurationCensus census;
    census.total_configs = static_cast<std::int64_t>(configs.size());
    census.frequencies = std::move(freq);
    census.expected_per_config =
        static_cast<double>(k_nulls) / static_cast<double>(census.total_configs);
    census.low_expected = census.expected_per_config < 5.0;

    if (census.total_configs == 1) {
        ChiSquareResult degen;
        degen.degenerate = true;  // p = 1, df = 0: nothing to test
        return {std::move(census), degen};
    }
    std::vector<std::int64_t> counts;
    counts.reserve(census.frequencies.size());
    for (const auto& [key, count] : census.frequencies) counts.push_back(count);
    return {std::move(census), chi_square_uniform(counts)};
}

std::pair<BinaryMatrix, int> gen_low_checkerboard(Rng& rng) {
    constexpr int kMaxRestarts = 100;
    constexpr std::int64_t kTrialBudget = 1'000'000;

    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        const int n_rows = 5 + static_cast<int>(rng.bounded(11));
        const int n_cols = 5 + static_cast<int>(rng.bounded(11));
        const int target_k = 1 + static_cast<int>(rng.bounded(5));

        BinaryMatrix m(n_rows, n_cols);
        std::vector<std::int32_t> zero_cells;
        zero_cells.reserve(static_cast<std::size_t>(n_rows) * n_cols);
        for (std::int32_t i = 0; i < n_rows * n_cols; ++i) zero_cells.push_back(i);
        std::vector<int> row_count(n_rows, 0), col_count(n_cols, 0);
        int covered_rows = 0, covered_cols = 0;
        std::int64_t cu = 0;

        // checkerboard delta from turning on (r, c); only pairs touching row r move
        auto delta_if_set = [&](int r, int c) {
            std::int64_t before = 0;
            for (int r2 = 0; r2 < n_rows; ++r2)
                if (r2 != r) before += cu_pair(m, r, r2);
            m.set(r, c, true);
            std::int64_t after = 0;
            for (int r2 = 0; r2 < n_rows; ++r2)
                if (r2 != r) after += cu_pair(m, r, r2);
            m.set(r, c, false);
            return after - before;
        };

        std::int64_t trials = 0;
        std::int64_t rejections_in_a_row = 0;
        bool stalled = false;
        while (trials < kTrialBudget && !zero_cells.empty() &&
               (covered_rows < n_rows || covered_cols < n_cols)) {
            ++trials;
            const auto pick = rng.bounded(static_cast<std::int64_t>(zero_cells.size()));
            const std::int32_t cell = zero_cells[pick];
            const int r = cell / n_cols;
            const int c = cell % n_cols;

            if (cu + delta_if_set(r, c) > target_k) {
                // acceptance is the only thing that changes the state, so once
                // no zero cell is acceptable the remaining budget cannot help
                if (++rejections_in_a_row >= 2 * static_cast<std::int64_t>(zero_cells.size())) {
                    stalled = true;
                    for (std::int32_t z : zero_cells) {
                        if (cu + delta_if_set(z / n_cols, z % n_cols) <= target_k) {
                            stalled = false;
                            break;
                        }
                    }
                    if (stalled) break;
                    rejections_in_a_row = 0;
                }
                continue;
            }
            rejections_in_a_row = 0;
            cu += delta_if_set(r, c);
            m.set(r, c, true);
            zero_cells[pick] = zero_cells.back();
            zero_cells.pop_back();
            if (row_count[r]++ == 0) ++covered_rows;
            if (col_count[c]++ == 0) ++covered_cols;
        }

        // a fully covered matrix can still end checkerboard-free (nested
        // fills); those have a single configuration and are useless here
        if (covered_rows == n_rows && covered_cols == n_cols && cu >= 1)
            return {std::move(m), target_k};
    }
    throw std::runtime_error("gen_low_checkerboard: exhausted 100 restarts");
}

BinaryMatrix gen_random_fill(int n_rows, int n_cols, double fill, Rng& rng) {
    if (!(fill >= 0.0 && fill <= 1.0))
        throw std::invalid_argument("gen_random_fill: fill must be in [0, 1]");
    BinaryMatrix m(n_rows, n_cols);
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c)
            if (rng.real53() < fill) m.set(r, c, true);
    return m;
}

namespace {

void append_double(std::string& line, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("write_csv: number formatting failed");
    line.append(buf, ptr);
}

}  // namespace

void write_csv(const ExperimentSeries& series, std::ostream& out) {
    if (series.x.size() != series.mean.size() ||
        (series.dispersion && series.dispersion->size() != series.x.size()))
        throw std::invalid_argument("write_csv: series columns have unequal lengths");
    out << (series.dispersion ? "x,mean,dispersion\n" : "x,mean\n");
    std::string line;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        line.clear();
        line += std::to_string(series.x[i]);
        line += ',';
        append_double(line, series.mean[i]);
        if (series.dispersion) {
            line += ',';
            append_double(line, (*series.dispersion)[i]);
        }
        line += '\n';
        out << line;
    }
}

void write_csv(const ExperimentSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(series, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

ExperimentSeries convergence_experiment(const BinaryMatrix& m, std::int64_t set_size,
                                        const ArithmeticSchedule& schedule,
                                        const RandomizerConfig& cfg, int threads) {
    if (set_size < 1) throw std::invalid_argument("convergence_experiment: set_size must be >= 1");
    if (schedule.start < 0 || schedule.step < 1 || schedule.stop < schedule.start)
        throw std::invalid_argument("convergence_experiment: bad schedule");

    ExperimentSeries series;
    series.label = "trade";
    series.dispersion.emplace();
    const std::int64_t observed_cu = total_checkerboards(m);

    std::uint64_t point_index = 0;
    for (std::int64_t n = schedule.start; n <= schedule.stop; n += schedule.step, ++point_index) {
        double mean = 0.0, sd = 0.0;
        if (n == 0) {
            mean = static_cast<double>(observed_cu);  // zero extractions is the identity
        } else {
            RandomizerConfig point_cfg = cfg;
            point_cfg.n_extractions = n;
            point_cfg.seed = mix_seed(cfg.seed, point_index);
            const auto nulls = batch_randomize(m, set_size, point_cfg, threads);
            double sum = 0.0, sum_sq = 0.0;
            for (const auto& null : nulls) {
                const auto cu = static_cast<double>(total_checkerboards(null));
                sum += cu;
                sum_sq += cu * cu;
            }
            const auto k = static_cast<double>(set_size);
            mean = sum / k;
            if (set_size > 1) {
                const double var = std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0));
                sd = std::sqrt(var);
            }
        }
        series.x.push_back(n);
        series.mean.push_back(mean);
        series.dispersion->push_back(sd);
    }
    return series;
}

std::optional<std::int64_t> stability_detect(const ExperimentSeries& series, int window,
                                             double rel_tol) {
    if (window < 1) throw std::invalid_argument("stability_detect: window must be >= 1");
    if (series.mean.size() < static_cast<std::size_t>(window))
        throw std::invalid_argument("stability_detect: series shorter than window");
    const std::size_t n = series.mean.size();
    for (std::size_t i = 0; i + window <= n; ++i) {
        const double ref = series.mean[i];
        bool stable = true;
        for (std::size_t j = i; j < i + static_cast<std::size_t>(window); ++j) {
            if (std::fabs(series.mean[j] - ref) > rel_tol * std::fabs(ref)) {
                stable = false;
                break;
            }
        }
        if (stable) return series.x[i];
    }
    return std::nullopt;
}

namespace {

// Shared walk for the perturbation / success / timing drivers. `timed` turns
// on per-operation kernel timing; everything else (cell updates, sampling)
// stays off the clock.
struct OperationDriver {
    const BinaryMatrix& original;
    BinaryMatrix work;
    NullAlgorithm algorithm;
    TradeCountMode mode;
    Rng rng;
    PresenceLists lists;
    TradeScratch scratch;
    std::int64_t successes = 0;
    std::int64_t kernel_ns = 0;

    OperationDriver(const BinaryMatrix& m, NullAlgorithm alg, TradeCountMode mode_,
                    std::uint64_t seed)
        : original(m), work(m), algorithm(alg), mode(mode_), rng(seed) {
        if (algorithm == NullAlgorithm::trade) lists = to_presence_lists(m);
    }

    void step(bool timed) {
        if (algorithm == NullAlgorithm::swap) {
            bool changed;
            if (timed) {
                const auto t0 = std::chrono::steady_clock::now();
                changed = attempt_swap(work, rng);
                kernel_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            } else {
                changed = attempt_swap(work, rng);
            }
            if (changed) ++successes;
            return;
        }
        ExtractionResult res;
        if (timed) {
            const auto t0 = std::chrono::steady_clock::now();
            res = extract_pair(lists, rng, mode, scratch);
            kernel_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        } else {
            res = extract_pair(lists, rng, mode, scratch);
        }
        if (res.t > 0) {
            ++successes;
            const bool by_row = lists.orientation == Orientation::by_row;
            auto move_cells = [&](int from, int to, const std::vector<std::int32_t>& moved) {
                for (std::int32_t e : moved) {
                    if (by_row) {
                        work.flip(from, e);
                        work.flip(to, e);
                    } else {
                        work.flip(e, from);
                        work.flip(e, to);
                    }
                }
            };
            move_cells(res.index_a, res.index_b, scratch.moved_ab);
            move_cells(res.index_b, res.index_a, scratch.moved_ba);
        }
    }

    double current_perturbation() const { return perturbation(original, work); }
};

}  // namespace

ExperimentSeries perturbation_curve(const BinaryMatrix& m, NullAlgorithm algorithm,
                                    std::int64_t max_ops, std::int64_t stride, std::uint64_t seed,
                                    TradeCountMode mode) {
    if (stride < 1 || max_ops < stride)
        throw std::invalid_argument("perturbation_curve: need max_ops >= stride >= 1");
    ExperimentSeries series;
    series.label = algorithm == NullAlgorithm::trade ? "trade" : "swap";
    OperationDriver driver(m, algorithm, mode, seed);
    series.x.push_back(0);
    series.mean.push_back(0.0);
    for (std::int64_t op = 1; op <= max_ops; ++op) {
        driver.step(false);
        if (op % stride == 0 || op == max_ops) {
            series.x.push_back(op);
            series.mean.push_back(driver.current_perturbation());
        }
    }
    return series;
}

ExperimentSeries success_rate_curve(const BinaryMatrix& m, NullAlgorithm algorithm,
                                    std::int64_t n_attempts, std::uint64_t seed,
                                    std::int64_t stride, TradeCountMode mode) {
    if (stride < 1 || n_attempts < 1)
        throw std::invalid_argument("success_rate_curve: need n_attempts >= 1, stride >= 1");
    ExperimentSeries series;
    series.label = algorithm == NullAlgorithm::trade ? "trade" : "swap";
    OperationDriver driver(m, algorithm, mode, seed);
    for (std::int64_t attempt = 1; attempt <= n_attempts; ++attempt) {
        driver.step(false);
        if (attempt % stride == 0 || attempt == n_attempts) {
            series.x.push_back(attempt);
            series.mean.push_back(static_cast<double>(driver.successes));
        }
    }
    return series;
}

ExperimentSeries timing_curve(const BinaryMatrix& m, NullAlgorithm algorithm, std::int64_t max_ops,
                              std::int64_t stride, std::uint64_t seed, TradeCountMode mode) {
    if (stride < 1 || max_ops < stride)
        throw std::invalid_argument("timing_curve: need max_ops >= stride >= 1");
    ExperimentSeries series;
    series.label = algorithm == NullAlgorithm::trade ? "trade" : "swap";
    OperationDriver driver(m, algorithm, mode, seed);
    series.x.push_back(0);
    series.mean.push_back(0.0);
    for (std::int64_t op = 1; op <= max_ops; ++op) {
        driver.step(true);
        if (op % stride == 0 || op == max_ops) {
            series.x.push_back(driver.kernel_ns);
            series.mean.push_back(driver.current_perturbation());
        }
    }
    return series;
}

}  // namespace tradenull

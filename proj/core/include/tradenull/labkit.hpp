#ifndef TRADENULL_LABKIT_HPP
#define TRADENULL_LABKIT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tradenull/matrix.hpp"
#include "tradenull/rng.hpp"
#include "tradenull/trader.hpp"

namespace tradenull {

/// Thrown when enumerate_margin_fixed exceeds its configuration limit.
class EnumerationOverflow : public std::runtime_error {
public:
    EnumerationOverflow(std::int64_t found, std::int64_t limit)
        : std::runtime_error("enumeration overflow: more than " + std::to_string(limit) +
                             " configurations (found " + std::to_string(found) + " so far)"),
          count_so_far(found) {}

    std::int64_t count_so_far;
};

/// A randomizer produced a matrix outside the enumerated configuration set.
/// This means margins were not preserved; it must never fire.
class MarginViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Equality key: dimensions plus row-major cells (MSB-first per byte), so
/// byte order on keys of equal shape matches row-major bit order.
std::string canonical_key(const BinaryMatrix& m);

/// All distinct 0/1 matrices with exactly these margins, in ascending
/// row-major bit order, found by depth-first cell assignment with
/// feasibility pruning. Throws EnumerationOverflow past `limit`;
/// infeasible margins give an empty result.
std::vector<BinaryMatrix> enumerate_margin_fixed(const Margins& margins,
                                                 std::int64_t limit = 1'000'000);

/// Regularized lower incomplete gamma P(a, x), to absolute accuracy 1e-10:
/// power series for x < a + 1, Lentz continued fraction otherwise, at most
/// 500 iterations. Throws std::runtime_error if the expansion fails to
/// converge; never silently degrades.
double regularized_gamma_p(double a, double x);

struct ChiSquareResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    bool degenerate = false;  // single-category census: statistic/df carry no information
};

/// Goodness of fit against the uniform distribution over the categories.
/// Needs >= 2 categories and a positive total count.
ChiSquareResult chi_square_uniform(std::span<const std::int64_t> counts);

struct ConfigurationCensus {
    std::int64_t total_configs = 0;
    std::map<std::string, std::int64_t> frequencies;  // canonical key -> count, zero counts kept
    double expected_per_config = 0.0;
    bool low_expected = false;  // expected < 5: chi-square approximation is shaky
};

/// Generates k_nulls with batch_randomize, bins them against the full
/// enumerated configuration set of margins(m), and tests uniformity.
/// Zero-count configurations stay in the test. A null whose key is not in
/// the enumerated set raises MarginViolation. A single-configuration matrix
/// yields a degenerate result with p = 1 and df = 0.
std::pair<ConfigurationCensus, ChiSquareResult> uniformity_experiment(const BinaryMatrix& m,
                                                                      std::int64_t k_nulls,
                                                                      const RandomizerConfig& cfg,
                                                                      int threads = 1);

/// Random matrix with few checkerboards: dimensions uniform in [5, 15],
/// target k uniform in [1, 5]; 0-cells are turned on one at a time, reverting
/// any that would push the checkerboard total past k, until every row and
/// column holds at least one presence. Returns the matrix and k. Retries with
/// fresh randomness when an attempt stalls; throws std::runtime_error after
/// 100 restarts.
std::pair<BinaryMatrix, int> gen_low_checkerboard(Rng& rng);

/// Independent cells, each 1 with probability fill.
BinaryMatrix gen_random_fill(int n_rows, int n_cols, double fill, Rng& rng);

/// Series of sample points from one experiment: x is an operation count or a
/// cumulative kernel time in nanoseconds, depending on the driver.
struct ExperimentSeries {
    std::vector<std::int64_t> x;
    std::vector<double> mean;
    std::optional<std::vector<double>> dispersion;
    std::string label;
};

/// `x,mean[,dispersion]` header, one row per sample, `.` decimal separator.
void write_csv(const ExperimentSeries& series, std::ostream& out);
void write_csv(const ExperimentSeries& series, const std::filesystem::path& path);

struct ArithmeticSchedule {
    std::int64_t start = 0;
    std::int64_t stop = 10000;
    std::int64_t step = 100;  // points are start, start+step, ..., <= stop
};

/// For each extraction count n in the schedule, generates set_size nulls with
/// n extractions each and records the mean (and sample SD) of their
/// checkerboard totals. The n = 0 point is the matrix itself, exactly.
ExperimentSeries convergence_experiment(const BinaryMatrix& m, std::int64_t set_size,
                                        const ArithmeticSchedule& schedule,
                                        const RandomizerConfig& cfg, int threads = 1);

/// Smallest x whose next `window` means all stay within rel_tol relative
/// deviation of the window's first mean. Empty result when never stable.
std::optional<std::int64_t> stability_detect(const ExperimentSeries& series, int window = 100,
                                             double rel_tol = 0.01);

enum class NullAlgorithm { trade, swap };

/// Applies single operations (pair extractions or attempted swaps) to a
/// working copy, sampling the perturbation against m every `stride`
/// operations. The series starts at x = 0 with perturbation 0.
ExperimentSeries perturbation_curve(const BinaryMatrix& m, NullAlgorithm algorithm,
                                    std::int64_t max_ops, std::int64_t stride, std::uint64_t seed,
                                    TradeCountMode mode = TradeCountMode::uniform_1_to_n);

/// Cumulative count of matrix-modifying operations vs attempts.
ExperimentSeries success_rate_curve(const BinaryMatrix& m, NullAlgorithm algorithm,
                                    std::int64_t n_attempts, std::uint64_t seed,
                                    std::int64_t stride = 1,
                                    TradeCountMode mode = TradeCountMode::uniform_1_to_n);

/// Like perturbation_curve, with x the cumulative wall-clock nanoseconds of
/// the operation kernel alone (list comparison and trade, or submatrix draw
/// and swap); bookkeeping and sampling stay outside the timed region.
ExperimentSeries timing_curve(const BinaryMatrix& m, NullAlgorithm algorithm, std::int64_t max_ops,
                              std::int64_t stride, std::uint64_t seed,
                              TradeCountMode mode = TradeCountMode::uniform_1_to_n);

}  // namespace tradenull

#endif

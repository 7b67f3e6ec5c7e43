#ifndef TRADENULL_METRICS_HPP
#define TRADENULL_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "tradenull/matrix.hpp"

namespace tradenull {

/// Checkerboard units between two rows: (R_i - S)(R_j - S), where R_i, R_j
/// are the row totals and S the number of columns where both rows have a 1.
/// Equivalently, the number of column pairs forming a 2x2 checkerboard
/// between the rows. Computed from word popcounts; this is the hot kernel of
/// every convergence experiment.
std::int64_t cu_pair(const BinaryMatrix& m, int row_i, int row_j);

/// Same, on explicit 0/1 sequences. Throws std::invalid_argument on a length
/// mismatch or a non-bit value.
std::int64_t cu_pair(std::span<const int> row_i, std::span<const int> row_j);

/// Sum of cu_pair over unordered row pairs. 64-bit accumulation: large
/// matrices overflow 32 bits easily.
std::int64_t total_checkerboards(const BinaryMatrix& m);

/// Independent oracle for total_checkerboards: counts (row pair, column pair)
/// quadruples whose 2x2 submatrix is a checkerboard. O(R^2 C^2), small
/// matrices only.
std::int64_t brute_force_checkerboards(const BinaryMatrix& m);

struct CheckerboardReport {
    std::int64_t total = 0;
    std::optional<std::map<std::pair<int, int>, std::int64_t>> per_pair;
};

CheckerboardReport checkerboard_report(const BinaryMatrix& m, bool with_pairs = false);

/// Percentage of cells that differ, in [0, 100]. Throws on dimension mismatch.
double perturbation(const BinaryMatrix& original, const BinaryMatrix& other);

enum class Tail { greater, less, two_sided };

/// Observation-inclusive Monte Carlo p-value: greater tail is
/// (1 + #{null >= observed}) / (1 + k). Never returns 0; the floor is 1/(k+1).
double empirical_p(double observed, std::span<const double> nulls, Tail tail);

}  // namespace tradenull

#endif

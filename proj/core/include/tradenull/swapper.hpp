#ifndef TRADENULL_SWAPPER_HPP
#define TRADENULL_SWAPPER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tradenull/matrix.hpp"
#include "tradenull/rng.hpp"

namespace tradenull {

enum class SwapCountMode { attempted, successful };

struct SwapConfig {
    std::int64_t burn_in_attempts = 30000;  // attempted swaps before the first sequential null
    std::int64_t n_swaps = 0;
    SwapCountMode count_mode = SwapCountMode::attempted;
    std::uint64_t seed = 0;
};

/// The requested swaps cannot happen: the matrix has no checkerboard, so it
/// is the unique configuration for its margins.
class NoSwapPossible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True iff ((a,b),(c,d)) is [[0,1],[1,0]] or [[1,0],[0,1]], the only 2x2
/// patterns swappable without changing margins.
inline bool is_checkerboard(bool a, bool b, bool c, bool d) {
    return a == d && b == c && a != b;
}

/// Draws two distinct rows and two distinct columns uniformly; if their
/// intersection is a checkerboard, replaces it with the other configuration
/// and returns true. Throws std::invalid_argument on a matrix smaller than 2x2.
bool attempt_swap(BinaryMatrix& m, Rng& rng);

/// Burn-in of cfg.burn_in_attempts attempted swaps yields null 0; each later
/// null is the previous one after exactly one successful swap, so consecutive
/// nulls differ in exactly 4 cells. Throws NoSwapPossible on a
/// checkerboard-free matrix.
std::vector<BinaryMatrix> sequential_swap_ensemble(const BinaryMatrix& m, std::int64_t k,
                                                   const SwapConfig& cfg);

/// A copy of m after cfg.n_swaps swaps, counted per cfg.count_mode. The
/// successful mode throws NoSwapPossible on a checkerboard-free matrix.
BinaryMatrix independent_swap(const BinaryMatrix& m, const SwapConfig& cfg);

/// 1 / (2 f^2 (1-f)^2): expected attempts per successful swap on an
/// independent-cell matrix of fill f. Throws std::invalid_argument outside (0, 1).
double estimate_attempts_per_success(double fill);

/// Swap count for a well-mixed independent swap: 2 * presences *
/// attempts-per-success at the matrix fill, rounded up. Throws
/// std::invalid_argument at fill 0 or 1 (nothing to randomize).
std::int64_t recommended_swap_count(const BinaryMatrix& m);

}  // namespace tradenull

#endif

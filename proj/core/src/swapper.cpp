#include "tradenull/swapper.hpp"

#include <cmath>

#include "tradenull/metrics.hpp"

namespace tradenull {

bool attempt_swap(BinaryMatrix& m, Rng& rng) {
    if (m.n_rows() < 2 || m.n_cols() < 2)
        throw std::invalid_argument("attempt_swap: matrix must be at least 2x2");
    const auto [r1, r2] = rng.distinct_pair(m.n_rows());
    const auto [c1, c2] = rng.distinct_pair(m.n_cols());
    const bool a = m.get(static_cast<int>(r1), static_cast<int>(c1));
    const bool b = m.get(static_cast<int>(r1), static_cast<int>(c2));
    const bool c = m.get(static_cast<int>(r2), static_cast<int>(c1));
    const bool d = m.get(static_cast<int>(r2), static_cast<int>(c2));
    if (!is_checkerboard(a, b, c, d)) return false;
    m.flip(static_cast<int>(r1), static_cast<int>(c1));
    m.flip(static_cast<int>(r1), static_cast<int>(c2));
    m.flip(static_cast<int>(r2), static_cast<int>(c1));
    m.flip(static_cast<int>(r2), static_cast<int>(c2));
    return true;
}

std::vector<BinaryMatrix> sequential_swap_ensemble(const BinaryMatrix& m, std::int64_t k,
                                                   const SwapConfig& cfg) {
    if (k < 1) throw std::invalid_argument("sequential_swap_ensemble: k must be >= 1");
    // No checkerboard means the margins admit exactly one configuration, and
    // swaps cannot create one, so the whole run would spin forever.
    if (total_checkerboards(m) == 0)
        throw NoSwapPossible("sequential_swap_ensemble: no swap possible (matrix has no checkerboard)");

    BinaryMatrix work = m;
    Rng rng(cfg.seed);
    for (std::int64_t i = 0; i < cfg.burn_in_attempts; ++i) attempt_swap(work, rng);

    std::vector<BinaryMatrix> out;
    out.reserve(static_cast<std::size_t>(k));
    out.push_back(work);
    for (std::int64_t i = 1; i < k; ++i) {
        while (!attempt_swap(work, rng)) {
        }
        out.push_back(work);
    }
    return out;
}

BinaryMatrix independent_swap(const BinaryMatrix& m, const SwapConfig& cfg) {
    if (cfg.n_swaps < 0) throw std::invalid_argument("independent_swap: n_swaps must be >= 0");
    BinaryMatrix work = m;
    if (cfg.n_swaps == 0) return work;
    Rng rng(cfg.seed);
    if (cfg.count_mode == SwapCountMode::attempted) {
        for (std::int64_t i = 0; i < cfg.n_swaps; ++i) attempt_swap(work, rng);
        return work;
    }
    if (total_checkerboards(m) == 0)
        throw NoSwapPossible("independent_swap: no swap possible (matrix has no checkerboard)");
    for (std::int64_t done = 0; done < cfg.n_swaps;) {
        if (attempt_swap(work, rng)) ++done;
    }
    return work;
}

double estimate_attempts_per_success(double fill) {
    if (!(fill > 0.0 && fill < 1.0))
        throw std::invalid_argument("estimate_attempts_per_success: fill must be in (0, 1)");
    const double q = 1.0 - fill;
    return 1.0 / (2.0 * fill * fill * q * q);
}

std::int64_t recommended_swap_count(const BinaryMatrix& m) {
    const double fill = fill_ratio(m);
    if (fill <= 0.0 || fill >= 1.0)
        throw std::invalid_argument(
            "recommended_swap_count: matrix fill is 0 or 1, nothing to randomize");
    const double count =
        2.0 * static_cast<double>(m.count_ones()) * estimate_attempts_per_success(fill);
    return static_cast<std::int64_t>(std::ceil(count));
}

}  // namespace tradenull

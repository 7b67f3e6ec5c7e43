#include "tradenull/metrics.hpp"

#include <bit>
#include <stdexcept>

#include "tradenull/swapper.hpp"

namespace tradenull {

namespace {

std::int64_t row_popcount(std::span<const std::uint64_t> words) {
    std::int64_t n = 0;
    for (std::uint64_t w : words) n += std::popcount(w);
    return n;
}

std::int64_t shared_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::popcount(a[i] & b[i]);
    return s;
}

}  // namespace

std::int64_t cu_pair(const BinaryMatrix& m, int row_i, int row_j) {
    const auto a = m.row_words(row_i);
    const auto b = m.row_words(row_j);
    const std::int64_t s = shared_count(a, b);
    return (row_popcount(a) - s) * (row_popcount(b) - s);
}

std::int64_t cu_pair(std::span<const int> row_i, std::span<const int> row_j) {
    if (row_i.size() != row_j.size())
        throw std::invalid_argument("cu_pair: row length mismatch");
    std::int64_t ri = 0, rj = 0, s = 0;
    for (std::size_t c = 0; c < row_i.size(); ++c) {
        const int a = row_i[c], b = row_j[c];
        if ((a != 0 && a != 1) || (b != 0 && b != 1))
            throw std::invalid_argument("cu_pair: cell value must be 0 or 1");
        ri += a;
        rj += b;
        s += a & b;
    }
    return (ri - s) * (rj - s);
}

std::int64_t total_checkerboards(const BinaryMatrix& m) {
    std::int64_t total = 0;
    std::vector<std::int64_t> row_tot(static_cast<std::size_t>(m.n_rows()));
    for (int r = 0; r < m.n_rows(); ++r) row_tot[r] = row_popcount(m.row_words(r));
    for (int i = 0; i < m.n_rows(); ++i) {
        const auto wi = m.row_words(i);
        for (int j = i + 1; j < m.n_rows(); ++j) {
            const std::int64_t s = shared_count(wi, m.row_words(j));
            total += (row_tot[i] - s) * (row_tot[j] - s);
        }
    }
    return total;
}

std::int64_t brute_force_checkerboards(const BinaryMatrix& m) {
    std::int64_t total = 0;
    for (int i = 0; i < m.n_rows(); ++i)
        for (int j = i + 1; j < m.n_rows(); ++j)
            for (int c1 = 0; c1 < m.n_cols(); ++c1)
                for (int c2 = c1 + 1; c2 < m.n_cols(); ++c2)
                    if (is_checkerboard(m.get(i, c1), m.get(i, c2), m.get(j, c1), m.get(j, c2)))
                        ++total;
    return total;
}

CheckerboardReport checkerboard_report(const BinaryMatrix& m, bool with_pairs) {
    CheckerboardReport report;
    if (!with_pairs) {
        report.total = total_checkerboards(m);
        return report;
    }
    report.per_pair.emplace();
    for (int i = 0; i < m.n_rows(); ++i)
        for (int j = i + 1; j < m.n_rows(); ++j) {
            const std::int64_t cu = cu_pair(m, i, j);
            report.total += cu;
            (*report.per_pair)[{i, j}] = cu;
        }
    return report;
}

double perturbation(const BinaryMatrix& original, const BinaryMatrix& other) {
    if (original.n_rows() != other.n_rows() || original.n_cols() != other.n_cols())
        throw std::invalid_argument("perturbation: dimension mismatch");
    const auto a = original.words();
    const auto b = other.words();
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += std::popcount(a[i] ^ b[i]);
    return 100.0 * static_cast<double>(diff) / static_cast<double>(original.n_cells());
}

double empirical_p(double observed, std::span<const double> nulls, Tail tail) {
    if (nulls.empty()) throw std::invalid_argument("empirical_p: nulls must be non-empty");
    std::int64_t ge = 0, le = 0;
    for (double v : nulls) {
        if (v >= observed) ++ge;
        if (v <= observed) ++le;
    }
    const double k1 = static_cast<double>(nulls.size()) + 1.0;
    const double greater = (1.0 + static_cast<double>(ge)) / k1;
    const double less = (1.0 + static_cast<double>(le)) / k1;
    switch (tail) {
        case Tail::greater: return greater;
        case Tail::less: return less;
        case Tail::two_sided: return std::min(1.0, 2.0 * std::min(greater, less));
    }
    return 1.0;
}

}  // namespace tradenull

#include "tradenull/matrix.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace tradenull {

BinaryMatrix::BinaryMatrix(int n_rows, int n_cols)
    : rows_(n_rows), cols_(n_cols), wpr_((n_cols + 63) / 64) {
    if (n_rows <= 0 || n_cols <= 0)
        throw std::invalid_argument("BinaryMatrix: dimensions must be positive, got " +
                                    std::to_string(n_rows) + "x" + std::to_string(n_cols));
    bits_.assign(static_cast<std::size_t>(rows_) * wpr_, 0);
}

BinaryMatrix::BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : BinaryMatrix(static_cast<int>(rows.size()),
                   rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_)
            throw std::invalid_argument("BinaryMatrix: ragged initializer row " + std::to_string(r));
        int c = 0;
        for (int v : row) {
            if (v != 0 && v != 1)
                throw std::invalid_argument("BinaryMatrix: cell value must be 0 or 1");
            if (v) set(r, c, true);
            ++c;
        }
        ++r;
    }
}

std::int64_t BinaryMatrix::count_ones() const {
    std::int64_t total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return total;
}

Margins margins(const BinaryMatrix& m) {
    Margins out;
    out.row_totals.resize(m.n_rows());
    out.col_totals.assign(m.n_cols(), 0);
    for (int r = 0; r < m.n_rows(); ++r) {
        std::int64_t rt = 0;
        const auto words = m.row_words(r);
        for (int wi = 0; wi < m.words_per_row(); ++wi) {
            std::uint64_t w = words[wi];
            rt += std::popcount(w);
            while (w) {
                const int bit = std::countr_zero(w);
                ++out.col_totals[wi * 64 + bit];
                w &= w - 1;
            }
        }
        out.row_totals[r] = static_cast<std::int32_t>(rt);
    }
    return out;
}

double fill_ratio(const BinaryMatrix& m) {
    return static_cast<double>(m.count_ones()) / static_cast<double>(m.n_cells());
}

PresenceLists to_presence_lists(const BinaryMatrix& m) {
    PresenceLists p;
    if (m.n_cols() >= m.n_rows()) {
        p.orientation = Orientation::by_row;
        p.indexed_dim = m.n_rows();
        p.other_dim = m.n_cols();
        p.lists.resize(p.indexed_dim);
        for (int r = 0; r < m.n_rows(); ++r) {
            const auto words = m.row_words(r);
            for (int wi = 0; wi < m.words_per_row(); ++wi) {
                std::uint64_t w = words[wi];
                while (w) {
                    p.lists[r].push_back(static_cast<std::int32_t>(wi * 64 + std::countr_zero(w)));
                    w &= w - 1;
                }
            }
        }
    } else {
        p.orientation = Orientation::by_column;
        p.indexed_dim = m.n_cols();
        p.other_dim = m.n_rows();
        p.lists.resize(p.indexed_dim);
        for (int r = 0; r < m.n_rows(); ++r) {
            const auto words = m.row_words(r);
            for (int wi = 0; wi < m.words_per_row(); ++wi) {
                std::uint64_t w = words[wi];
                while (w) {
                    p.lists[wi * 64 + std::countr_zero(w)].push_back(r);
                    w &= w - 1;
                }
            }
        }
    }
    return p;
}

BinaryMatrix from_presence_lists(const PresenceLists& p) {
    if (static_cast<int>(p.lists.size()) != p.indexed_dim)
        throw std::invalid_argument("from_presence_lists: list count does not match indexed_dim");
    const bool by_row = p.orientation == Orientation::by_row;
    BinaryMatrix m(by_row ? p.indexed_dim : p.other_dim, by_row ? p.other_dim : p.indexed_dim);
    for (int li = 0; li < p.indexed_dim; ++li) {
        std::int32_t prev = -1;
        for (std::int32_t e : p.lists[li]) {
            if (e < 0 || e >= p.other_dim)
                throw std::invalid_argument("from_presence_lists: element " + std::to_string(e) +
                                            " out of range in list " + std::to_string(li));
            if (e == prev)
                throw std::invalid_argument("from_presence_lists: duplicate element " +
                                            std::to_string(e) + " in list " + std::to_string(li));
            if (e < prev)
                throw std::invalid_argument("from_presence_lists: list " + std::to_string(li) +
                                            " is not sorted ascending");
            prev = e;
            if (by_row)
                m.set(li, e, true);
            else
                m.set(e, li, true);
        }
    }
    return m;
}

}  // namespace tradenull

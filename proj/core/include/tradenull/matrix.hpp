#ifndef TRADENULL_MATRIX_HPP
#define TRADENULL_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace tradenull {

/// Dense presence-absence matrix, bit-packed row-major (64 cells per word).
/// Immutable in normal use: the randomizers return fresh copies. Trailing
/// bits past n_cols in the last word of each row are kept zero so whole-row
/// word operations (popcount, XOR) need no masking.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(int n_rows, int n_cols);  // all zeros

    /// Row-wise literal, cells must be 0 or 1; rows must be equal length.
    BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows);

    int n_rows() const { return rows_; }
    int n_cols() const { return cols_; }
    std::int64_t n_cells() const { return static_cast<std::int64_t>(rows_) * cols_; }

    bool get(int r, int c) const {
        return (bits_[word_index(r, c)] >> (c & 63)) & 1u;
    }

    void set(int r, int c, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (value)
            bits_[word_index(r, c)] |= mask;
        else
            bits_[word_index(r, c)] &= ~mask;
    }

    void flip(int r, int c) { bits_[word_index(r, c)] ^= std::uint64_t{1} << (c & 63); }

    std::int64_t count_ones() const;

    int words_per_row() const { return wpr_; }
    std::span<const std::uint64_t> row_words(int r) const {
        return {bits_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
    }
    std::span<const std::uint64_t> words() const { return bits_; }

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::size_t word_index(int r, int c) const {
        return static_cast<std::size_t>(r) * wpr_ + (static_cast<std::size_t>(c) >> 6);
    }

    int rows_ = 0;
    int cols_ = 0;
    int wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Row and column totals: the quantity every randomizer must conserve.
struct Margins {
    std::vector<std::int32_t> row_totals;
    std::vector<std::int32_t> col_totals;

    bool operator==(const Margins&) const = default;
};

enum class Orientation { by_row, by_column };

/// The randomizer's working representation: one sorted list of present
/// elements per line of the indexed dimension. Lists index into the other
/// dimension and are strictly increasing with no duplicates.
struct PresenceLists {
    Orientation orientation = Orientation::by_row;
    int indexed_dim = 0;  // number of lists
    int other_dim = 0;    // exclusive upper bound for list elements
    std::vector<std::vector<std::int32_t>> lists;
};

Margins margins(const BinaryMatrix& m);

/// Fraction of cells equal to 1, in [0, 1].
double fill_ratio(const BinaryMatrix& m);

/// Lists are built over the shorter dimension: one list per row when
/// n_cols >= n_rows (ties go to by_row), otherwise one list per column.
PresenceLists to_presence_lists(const BinaryMatrix& m);

/// Inverse of to_presence_lists. Throws std::invalid_argument on an element
/// index >= other_dim or a duplicate within a list.
BinaryMatrix from_presence_lists(const PresenceLists& p);

}  // namespace tradenull

#endif

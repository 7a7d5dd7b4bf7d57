#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace lebounds::gf2 {

/// Dense matrix over GF(2), bit-packed row-major into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols);

  static BitMatrix identity(size_t n);
  /// Parses rows separated by ';', e.g. "11;01".
  static BitMatrix parse(const std::string& text);
  static BitMatrix random(size_t rows, size_t cols, std::mt19937_64& rng);
  /// Random invertible n x n matrix (random row operations applied to I).
  static BitMatrix random_invertible(size_t n, std::mt19937_64& rng);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(size_t r, size_t c, bool v) {
    uint64_t& w = words_[r * stride_ + (c >> 6)];
    uint64_t m = uint64_t{1} << (c & 63);
    w = v ? (w | m) : (w & ~m);
  }
  void flip(size_t r, size_t c) { words_[r * stride_ + (c >> 6)] ^= uint64_t{1} << (c & 63); }

  /// dst_row ^= src_row
  void xor_row(size_t dst, size_t src);
  void swap_rows(size_t a, size_t b);
  bool row_is_zero(size_t r) const;

  BitMatrix transposed() const;
  BitMatrix submatrix_rows(const std::vector<size_t>& row_idx) const;

  bool operator==(const BitMatrix& o) const;
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<uint64_t> words_;
  friend BitMatrix multiply(const BitMatrix&, const BitMatrix&);
};

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
size_t rank(const BitMatrix& m);

/// Inverse of a square matrix; throws std::invalid_argument if singular.
BitMatrix invert(const BitMatrix& m);

/// Column echelon reduction m -> (reduced, r) with reduced == m * r and r
/// invertible. Pivots are chosen scanning rows top-to-bottom and, within a
/// row, columns left-to-right; pivot columns land at the left. When
/// `pivot_row_begin` > 0, pivot search is restricted to rows at or below it
/// while the column operations are still applied to the whole matrix.
struct ColumnReduction {
  BitMatrix reduced;
  BitMatrix r;
  size_t pivot_count = 0;
};
ColumnReduction column_reduce(const BitMatrix& m, size_t pivot_row_begin = 0);

/// First k row indices, scanned in `order` (defaults to 0..rows-1), whose rows
/// are linearly independent; throws std::invalid_argument if fewer exist.
std::vector<size_t> independent_rows(const BitMatrix& m, size_t k,
                                     const std::vector<size_t>& order = {});

/// Incremental row-space basis used by greedy row selection.
class RowBasis {
 public:
  explicit RowBasis(size_t cols) : cols_(cols) {}
  /// Adds the row if independent of the span so far; returns false otherwise.
  bool try_add(const BitMatrix& m, size_t row);
  size_t size() const { return basis_.size(); }

 private:
  size_t cols_;
  std::vector<std::vector<uint64_t>> basis_;   // echelonized rows
  std::vector<size_t> pivot_;
};

/// One solution of m * x = rhs (column vectors as bool vectors), if any.
std::optional<std::vector<bool>> solve(const BitMatrix& m, const std::vector<bool>& rhs);

/// Row set for a forced pair on a full-column-rank matrix m: finds y in the
/// column space of m with y[row_a] = y[row_b] = 1, then returns cols(m)
/// independent rows containing row_a, excluding row_b, with the remaining
/// rows picked greedily where y vanishes. Throws std::domain_error when no
/// such assignment exists.
std::vector<size_t> forced_pair_rows(const BitMatrix& m, size_t row_a, size_t row_b,
                                     uint64_t seed);

/// Basis of the right nullspace, one vector per row of the result.
BitMatrix nullspace(const BitMatrix& m);

}  // namespace lebounds::gf2

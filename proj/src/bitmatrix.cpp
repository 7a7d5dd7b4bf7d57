#include "lebounds/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <initializer_list>
#include <numeric>
#include <stdexcept>

#include "lebounds/rng.hpp"

namespace lebounds::gf2 {

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(size_t n) {
  BitMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::parse(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch == '0' || ch == '1') {
      cur.push_back(ch);
    } else if (ch != ' ') {
      throw std::invalid_argument("BitMatrix::parse: unexpected character");
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  if (lines.empty()) throw std::invalid_argument("BitMatrix::parse: empty input");
  BitMatrix m(lines.size(), lines[0].size());
  for (size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != m.cols_)
      throw std::invalid_argument("BitMatrix::parse: ragged rows");
    for (size_t c = 0; c < m.cols_; ++c)
      if (lines[r][c] == '1') m.set(r, c, true);
  }
  return m;
}

BitMatrix BitMatrix::random(size_t rows, size_t cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      if (rng() & 1u) m.set(r, c, true);
  return m;
}

BitMatrix BitMatrix::random_invertible(size_t n, std::mt19937_64& rng) {
  BitMatrix m = identity(n);
  if (n < 2) return m;
  size_t n_ops = 4 * n * (std::bit_width(n) + 1);
  for (size_t i = 0; i < n_ops; ++i) {
    size_t a = rng() % n;
    size_t b = rng() % n;
    if (a == b) continue;
    if (rng() & 1u)
      m.xor_row(a, b);
    else
      m.swap_rows(a, b);
  }
  return m;
}

void BitMatrix::xor_row(size_t dst, size_t src) {
  uint64_t* d = words_.data() + dst * stride_;
  const uint64_t* s = words_.data() + src * stride_;
  for (size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  std::swap_ranges(words_.begin() + a * stride_, words_.begin() + (a + 1) * stride_,
                   words_.begin() + b * stride_);
}

bool BitMatrix::row_is_zero(size_t r) const {
  const uint64_t* p = words_.data() + r * stride_;
  for (size_t w = 0; w < stride_; ++w)
    if (p[w]) return false;
  return true;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix BitMatrix::submatrix_rows(const std::vector<size_t>& row_idx) const {
  BitMatrix m(row_idx.size(), cols_);
  for (size_t r = 0; r < row_idx.size(); ++r)
    std::copy_n(words_.begin() + row_idx[r] * stride_, stride_,
                m.words_.begin() + r * m.stride_);
  return m;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    if (r + 1 < rows_) s.push_back(';');
  }
  return s;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: inner dimensions differ");
  BitMatrix out(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    uint64_t* dst = out.words_.data() + r * out.stride_;
    for (size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(r, k)) continue;
      const uint64_t* src = b.words_.data() + k * b.stride_;
      for (size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  size_t rk = 0;
  for (size_t c = 0; c < work.cols() && rk < work.rows(); ++c) {
    size_t pivot = rk;
    while (pivot < work.rows() && !work.get(pivot, c)) ++pivot;
    if (pivot == work.rows()) continue;
    work.swap_rows(rk, pivot);
    for (size_t r = 0; r < work.rows(); ++r)
      if (r != rk && work.get(r, c)) work.xor_row(r, rk);
    ++rk;
  }
  return rk;
}

BitMatrix invert(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix not square");
  size_t n = m.rows();
  BitMatrix work = m;
  BitMatrix inv = BitMatrix::identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    while (pivot < n && !work.get(pivot, c)) ++pivot;
    if (pivot == n) throw std::invalid_argument("invert: matrix is singular");
    work.swap_rows(c, pivot);
    inv.swap_rows(c, pivot);
    for (size_t r = 0; r < n; ++r) {
      if (r != c && work.get(r, c)) {
        work.xor_row(r, c);
        inv.xor_row(r, c);
      }
    }
  }
  return inv;
}

ColumnReduction column_reduce(const BitMatrix& m, size_t pivot_row_begin) {
  // Work on transposes so column operations become row operations.
  BitMatrix wt = m.transposed();                       // cols x rows
  BitMatrix rt = BitMatrix::identity(m.cols());
  size_t next = 0;
  for (size_t row = pivot_row_begin; row < m.rows() && next < m.cols(); ++row) {
    size_t pivot = next;
    while (pivot < m.cols() && !wt.get(pivot, row)) ++pivot;
    if (pivot == m.cols()) continue;
    wt.swap_rows(next, pivot);
    rt.swap_rows(next, pivot);
    for (size_t c = 0; c < m.cols(); ++c) {
      if (c != next && wt.get(c, row)) {
        wt.xor_row(c, next);
        rt.xor_row(c, next);
      }
    }
    ++next;
  }
  return ColumnReduction{wt.transposed(), rt.transposed(), next};
}

bool RowBasis::try_add(const BitMatrix& m, size_t row) {
  size_t stride = (cols_ + 63) / 64;
  std::vector<uint64_t> v(stride, 0);
  for (size_t c = 0; c < cols_; ++c)
    if (m.get(row, c)) v[c >> 6] |= uint64_t{1} << (c & 63);
  for (size_t i = 0; i < basis_.size(); ++i) {
    if ((v[pivot_[i] >> 6] >> (pivot_[i] & 63)) & 1u)
      for (size_t w = 0; w < stride; ++w) v[w] ^= basis_[i][w];
  }
  size_t piv = cols_;
  for (size_t c = 0; c < cols_; ++c) {
    if ((v[c >> 6] >> (c & 63)) & 1u) {
      piv = c;
      break;
    }
  }
  if (piv == cols_) return false;
  basis_.push_back(std::move(v));
  pivot_.push_back(piv);
  return true;
}

std::vector<size_t> independent_rows(const BitMatrix& m, size_t k,
                                     const std::vector<size_t>& order) {
  std::vector<size_t> scan = order;
  if (scan.empty()) {
    scan.resize(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) scan[i] = i;
  }
  RowBasis basis(m.cols());
  std::vector<size_t> chosen;
  for (size_t row : scan) {
    if (chosen.size() == k) break;
    if (basis.try_add(m, row)) chosen.push_back(row);
  }
  if (chosen.size() < k)
    throw std::invalid_argument("independent_rows: row space rank below request");
  return chosen;
}

std::optional<std::vector<bool>> solve(const BitMatrix& m, const std::vector<bool>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  // Augmented Gaussian elimination on [m | rhs].
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) aug.set(r, c, true);
    if (rhs[r]) aug.set(r, m.cols(), true);
  }
  std::vector<size_t> pivot_col;
  size_t rk = 0;
  for (size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    size_t pivot = rk;
    while (pivot < m.rows() && !aug.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    aug.swap_rows(rk, pivot);
    for (size_t r = 0; r < m.rows(); ++r)
      if (r != rk && aug.get(r, c)) aug.xor_row(r, rk);
    pivot_col.push_back(c);
    ++rk;
  }
  for (size_t r = rk; r < m.rows(); ++r)
    if (aug.get(r, m.cols())) return std::nullopt;
  std::vector<bool> x(m.cols(), false);
  for (size_t i = 0; i < rk; ++i) x[pivot_col[i]] = aug.get(i, m.cols());
  return x;
}

std::vector<size_t> forced_pair_rows(const BitMatrix& m, size_t row_a, size_t row_b,
                                     uint64_t seed) {
  size_t n_rows = m.rows(), n = m.cols();
  BitMatrix pair_rows = m.submatrix_rows({row_a, row_b});
  auto particular = solve(pair_rows, {true, true});
  if (!particular)
    throw std::domain_error("no valid control assignment: pair rows cannot both hit 1");

  std::vector<size_t> order(n_rows);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  seeded_shuffle(order, rng);

  auto complete = [&](const std::vector<bool>& y) -> std::vector<size_t> {
    RowBasis basis(n);
    if (!basis.try_add(m, row_a)) return {};
    std::vector<size_t> chosen{row_a};
    for (size_t r : order) {
      if (chosen.size() == n) break;
      if (r == row_a || y[r]) continue;
      if (basis.try_add(m, r)) chosen.push_back(r);
    }
    return chosen.size() == n ? chosen : std::vector<size_t>{};
  };

  // Column combinations of size up to 3 give deterministic candidates with
  // small support; the two marked bits are checked before materializing y.
  int budget = 128;
  auto try_columns = [&](std::initializer_list<size_t> cols) -> std::vector<size_t> {
    bool at_a = false, at_b = false;
    for (size_t c : cols) {
      at_a ^= m.get(row_a, c);
      at_b ^= m.get(row_b, c);
    }
    if (!at_a || !at_b || budget == 0) return {};
    --budget;
    std::vector<bool> y(n_rows, false);
    for (size_t r = 0; r < n_rows; ++r) {
      bool acc = false;
      for (size_t c : cols) acc ^= m.get(r, c);
      y[r] = acc;
    }
    return complete(y);
  };
  for (size_t j = 0; j < n; ++j) {
    auto chosen = try_columns({j});
    if (!chosen.empty()) return chosen;
  }
  for (size_t j = 0; j < n && budget > 0; ++j)
    for (size_t k = j + 1; k < n; ++k) {
      auto chosen = try_columns({j, k});
      if (!chosen.empty()) return chosen;
    }
  for (size_t j = 0; j < n && budget > 0; ++j)
    for (size_t k = j + 1; k < n && budget > 0; ++k)
      for (size_t l = k + 1; l < n; ++l) {
        auto chosen = try_columns({j, k, l});
        if (!chosen.empty()) return chosen;
      }

  BitMatrix ns = nullspace(pair_rows);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<bool> w = *particular;
    if (attempt > 0) {
      for (size_t k = 0; k < ns.rows(); ++k) {
        if (rng() & 1u)
          for (size_t c = 0; c < n; ++c)
            if (ns.get(k, c)) w[c] = !w[c];
      }
    }
    std::vector<bool> y(n_rows, false);
    for (size_t r = 0; r < n_rows; ++r) {
      bool acc = false;
      for (size_t c = 0; c < n; ++c) acc ^= m.get(r, c) && w[c];
      y[r] = acc;
    }
    auto chosen = complete(y);
    if (!chosen.empty()) return chosen;
    if (ns.rows() == 0) break;
  }
  throw std::domain_error("no valid control assignment for the forced pair");
}

BitMatrix nullspace(const BitMatrix& m) {
  // Row-reduce, then read free columns.
  BitMatrix work = m;
  std::vector<size_t> pivot_col;
  size_t rk = 0;
  for (size_t c = 0; c < work.cols() && rk < work.rows(); ++c) {
    size_t pivot = rk;
    while (pivot < work.rows() && !work.get(pivot, c)) ++pivot;
    if (pivot == work.rows()) continue;
    work.swap_rows(rk, pivot);
    for (size_t r = 0; r < work.rows(); ++r)
      if (r != rk && work.get(r, c)) work.xor_row(r, rk);
    pivot_col.push_back(c);
    ++rk;
  }
  std::vector<bool> is_pivot(work.cols(), false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  BitMatrix basis(work.cols() - rk, work.cols());
  size_t out = 0;
  for (size_t c = 0; c < work.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis.set(out, c, true);
    for (size_t i = 0; i < rk; ++i)
      if (work.get(i, c)) basis.set(out, pivot_col[i], true);
    ++out;
  }
  return basis;
}

}  // namespace lebounds::gf2

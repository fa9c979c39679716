#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chatelet/arith.hpp"

namespace chatelet {

// Dense integer matrix, row-major.
class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ZMatrix identity(std::size_t n) {
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ZMatrix from_columns(const std::vector<std::vector<Int>>& cols, std::size_t rows) {
    ZMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ZMatrix transpose() const {
    ZMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend ZMatrix operator*(const ZMatrix& a, const ZMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    ZMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend std::vector<Int> operator*(const ZMatrix& a, const std::vector<Int>& x) {
    if (a.cols_ != x.size()) throw DomainError("matrix-vector product: shape mismatch");
    std::vector<Int> y(a.rows_, 0);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend ZMatrix operator+(ZMatrix a, const ZMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend ZMatrix operator-(ZMatrix a, const ZMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  bool operator==(const ZMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  // Stack vertically.
  static ZMatrix vstack(const std::vector<ZMatrix>& blocks, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    ZMatrix m(rows, cols);
    std::size_t r = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(r + i, j) = b(i, j);
      r += b.rows();
    }
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// Fraction-free Gaussian elimination.
inline Int bareiss_determinant(ZMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Integer basis (as columns) of {x in Z^n : A x = 0}. The basis spans a saturated lattice.
inline ZMatrix integer_kernel(const ZMatrix& a) {
  const std::size_t n = a.cols();
  // Row-reduce [A^T | I]; rows whose A^T part vanishes give the kernel.
  ZMatrix m = a.transpose();
  ZMatrix u = ZMatrix::identity(n);
  const std::size_t c = m.cols();
  std::size_t pivot_row = 0;
  auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < c; ++j) m(dst, j) -= f * m(src, j);
    for (std::size_t j = 0; j < n; ++j) u(dst, j) -= f * u(src, j);
  };
  for (std::size_t col = 0; col < c && pivot_row < n; ++col) {
    while (true) {
      std::size_t best = n;
      for (std::size_t i = pivot_row; i < n; ++i)
        if (m(i, col) != 0 && (best == n || abs_int(m(i, col)) < abs_int(m(best, col)))) best = i;
      if (best == n) break;
      m.swap_rows(pivot_row, best);
      u.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < n; ++i) {
        if (m(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(pivot_row, col).get_mpz_t());
        row_op(i, pivot_row, q);
        if (m(i, col) != 0) done = false;
      }
      if (done) {
        ++pivot_row;
        break;
      }
    }
  }
  std::vector<std::vector<Int>> basis;
  for (std::size_t i = pivot_row; i < n; ++i) {
    std::vector<Int> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = u(i, j);
    basis.push_back(std::move(v));
  }
  return ZMatrix::from_columns(basis, n);
}

struct SmithForm {
  std::vector<Int> diagonal;  // nonnegative, d1 | d2 | ...
};

inline SmithForm smith_normal_form(ZMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    // Choose smallest nonzero entry in the trailing block as pivot.
    while (true) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (pi == rows || abs_int(m(i, j)) < abs_int(m(pi, pj)))) pi = i, pj = j;
      if (pi == rows) goto finished;
      m.swap_rows(t, pi);
      m.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the rest of the block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            for (std::size_t jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
finished:
  SmithForm s;
  for (std::size_t t = 0; t < k; ++t) s.diagonal.push_back(abs_int(m(t, t)));
  return s;
}

// Exact solution X of B X = C when B has full column rank and each column of C lies in
// the integer span of B's columns; std::nullopt otherwise.
inline std::optional<ZMatrix> solve_integer(const ZMatrix& b, const ZMatrix& c) {
  const std::size_t rows = b.rows(), k = b.cols();
  ZMatrix x(k, c.cols());
  for (std::size_t col = 0; col < c.cols(); ++col) {
    // Rational Gaussian elimination on the augmented system.
    std::vector<std::vector<Rat>> aug(rows, std::vector<Rat>(k + 1));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug[i][j] = b(i, j);
      aug[i][k] = c(i, col);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t j = 0; j < k && r < rows; ++j) {
      std::size_t p = r;
      while (p < rows && aug[p][j] == 0) ++p;
      if (p == rows) return std::nullopt;
      std::swap(aug[p], aug[r]);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || aug[i][j] == 0) continue;
        Rat f = aug[i][j] / aug[r][j];
        for (std::size_t jj = j; jj <= k; ++jj) aug[i][jj] -= f * aug[r][jj];
      }
      pivots.push_back(j);
      ++r;
    }
    if (pivots.size() != k) return std::nullopt;
    for (std::size_t i = r; i < rows; ++i)
      if (aug[i][k] != 0) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) {
      Rat v = aug[i][k] / aug[i][i];
      if (v.get_den() != 1) return std::nullopt;
      x(i, col) = v.get_num();
    }
  }
  return x;
}

inline std::size_t rank(const ZMatrix& m) {
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t p = r;
    while (p < m.rows() && a[p][j] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][j] == 0) continue;
      Rat f = a[i][j] / a[r][j];
      for (std::size_t jj = j; jj < m.cols(); ++jj) a[i][jj] -= f * a[r][jj];
    }
    ++r;
  }
  return r;
}

} // namespace chatelet

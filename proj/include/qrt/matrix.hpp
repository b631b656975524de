#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrt/field.hpp"

namespace qrt {

/// Dense row-major matrix over one exact field. Matrices act on column
/// vectors, so a map V -> W with dim V = c, dim W = r is an r x c matrix.
template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, F proto)
      : rows_(rows), cols_(cols), proto_(proto.zero()),
        data_(rows * cols, proto.zero()) {}

  static Matrix identity(std::size_t n, F proto) {
    Matrix m(n, n, proto);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = proto.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F proto() const { return proto_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const F& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_shape(b.rows_, b.cols_);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_shape(b.rows_, b.cols_);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape");
    Matrix r(a.rows_, b.cols_, a.proto_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const F& c, const Matrix& a) {
    Matrix r = a;
    for (F& x : r.data_) x = c * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: vector size");
    std::vector<F> r(rows_, proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  void require_shape(std::size_t r, std::size_t c) const {
    if (rows_ != r || cols_ != c) throw std::invalid_argument("Matrix: shape");
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  F proto_{};
  std::vector<F> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <Field F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    F piv = m(row, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = piv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      F f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  Matrix<F> w = m;
  return rref(w).size();
}

/// Basis of the right null space, one column vector per basis element.
/// Always satisfies rank + #kernel = cols.
template <Field F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m) {
  Matrix<F> w = m;
  std::vector<std::size_t> pivots = rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  F z = m.proto();
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), z);
    v[free] = z.one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -w(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One particular solution of m v = b, or nullopt if inconsistent.
template <Field F>
std::optional<std::vector<F>> solve(const Matrix<F>& m,
                                    const std::vector<F>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: size");
  Matrix<F> aug(m.rows(), m.cols() + 1, m.proto());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> v(m.cols(), m.proto());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    v[pivots[r]] = aug(r, m.cols());
  return v;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square");
  std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, m.proto());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.proto().one();
  }
  auto pivots = rref(aug);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t pc : pivots)
    if (pc >= n) return std::nullopt;
  Matrix<F> inv(n, n, m.proto());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Monic characteristic polynomial det(t I - m), low-degree coefficient
/// first. Hessenberg reduction followed by the leading-minor recurrence.
template <Field F>
std::vector<F> charpoly(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: non-square");
  std::size_t n = m.rows();
  F z = m.proto();
  if (n == 0) return {z.one()};
  Matrix<F> h = m;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    std::size_t piv = k + 1;
    while (piv < n && h(piv, k).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, k + 1));
    }
    F d = h(k + 1, k).inv();
    for (std::size_t i = k + 2; i < n; ++i) {
      if (h(i, k).is_zero()) continue;
      F f = h(i, k) * d;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(k + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, k + 1) += f * h(r, i);
    }
  }
  // p_k = charpoly of the leading k x k block of h.
  std::vector<std::vector<F>> p(n + 1);
  p[0] = {z.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    // (t - h_{k,k}) * p_{k-1}
    std::vector<F> cur(k + 1, z);
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      cur[i + 1] += p[k - 1][i];
      cur[i] -= h(k - 1, k - 1) * p[k - 1][i];
    }
    F prod = z.one();
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = prod * h(i, i - 1);
      F coef = prod * h(i - 1, k - 1);
      if (!coef.is_zero())
        for (std::size_t j = 0; j < p[i - 1].size(); ++j)
          cur[j] -= coef * p[i - 1][j];
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

/// Columns = the given vectors (all of dimension `rows`).
template <Field F>
Matrix<F> from_columns(std::size_t rows, const std::vector<std::vector<F>>& cols,
                       F proto) {
  Matrix<F> m(rows, cols.size(), proto);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("from_columns: ragged input");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

/// Basis of the column space: the original pivot columns.
template <Field F>
std::vector<std::vector<F>> colspace_basis(const Matrix<F>& m) {
  Matrix<F> w = m;
  std::vector<std::vector<F>> basis;
  for (std::size_t c : rref(w)) {
    std::vector<F> col(m.rows(), m.proto());
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

template <Field F>
Matrix<F> mat_pow(Matrix<F> base, std::size_t e) {
  Matrix<F> r = Matrix<F>::identity(base.rows(), base.proto());
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

/// Evaluates a polynomial (low-degree first) at a square matrix.
template <Field F>
Matrix<F> poly_at(const std::vector<F>& poly, const Matrix<F>& m) {
  std::size_t n = m.rows();
  Matrix<F> r(n, n, m.proto());
  Matrix<F> pw = Matrix<F>::identity(n, m.proto());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!poly[i].is_zero()) r = r + poly[i] * pw;
    if (i + 1 < poly.size()) pw = pw * m;
  }
  return r;
}

}  // namespace qrt

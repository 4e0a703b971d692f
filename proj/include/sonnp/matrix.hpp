#ifndef SONNP_MATRIX_H
#define SONNP_MATRIX_H

#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

#include "sonnp/rational.hpp"

namespace sonnp {

// Dense matrix over an exact field scalar (Rational or Sqrt2).
// All sizes here are tiny ((2n+1)^2 with n <= ~8), so dense row-major
// storage and cubic algorithms are fine.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix &o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto &v : data_)
      if (!scalar_is_zero(v)) return false;
    return true;
  }

  Matrix operator+(const Matrix &o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
  }

  Matrix operator-(const Matrix &o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
  }

  Matrix operator-() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
  }

  Matrix operator*(const Matrix &o) const {
    assert(cols_ == o.rows_);
    Matrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T &a = (*this)(i, k);
        if (scalar_is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const T &b = o(k, j);
          if (!scalar_is_zero(b)) m(i, j) += a * b;
        }
      }
    return m;
  }

  Matrix scaled(const T &s) const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  T trace() const {
    assert(rows_ == cols_);
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_upper_unipotent() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, i) != T(1)) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (!scalar_is_zero((*this)(i, j))) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        s += to_string((*this)(i, j));
        if (j + 1 < cols_) s += ", ";
      }
      s += "]\n";
    }
    return s;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using SMatrix = Matrix<Sqrt2>;

// exp(N) = sum_{i<k} N^i / i!  for nilpotent N with N^k = 0.
template <class T>
Matrix<T> mat_exp_nilpotent(const Matrix<T> &n, std::size_t k) {
  if (n.rows() != n.cols()) fail("DimensionMismatch", "exp of non-square matrix");
  if (k > n.rows()) k = n.rows() + 1;  // N^dim = 0 for any nilpotent of this size
  Matrix<T> result = Matrix<T>::identity(n.rows());
  Matrix<T> power = Matrix<T>::identity(n.rows());
  T factorial(1);
  for (std::size_t i = 1; i < k; ++i) {
    power = power * n;
    factorial *= T(static_cast<long>(i));
    result = result + power.scaled(T(1) / factorial);
  }
  if (!(power * n).is_zero()) fail("NotNilpotent", "N^k != 0 for supplied witness k");
  return result;
}

// Characteristic polynomial det(lambda*I - A) by Faddeev-LeVerrier.
// Returns coefficients [1, c_{n-1}, ..., c_0], leading first.
template <class T>
std::vector<T> char_poly(const Matrix<T> &a) {
  if (a.rows() != a.cols()) fail("DimensionMismatch", "char_poly of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> coeffs(n + 1, T(0));
  coeffs[0] = T(1);
  Matrix<T> m = Matrix<T>::identity(n);  // M_0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    T c = -(m.trace() / T(static_cast<long>(k)));
    coeffs[k] = c;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
  }
  return coeffs;
}

// Gauss-Jordan helpers (exact field arithmetic, partial "first nonzero" pivoting).

template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && scalar_is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || scalar_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class T>
Matrix<T> inverse(const Matrix<T> &a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  Matrix<T> m = a, inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && scalar_is_zero(m(piv, c))) ++piv;
    if (piv == n) fail("SingularMatrix", "inverse of singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    T d = T(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * d;
      inv(c, j) = inv(c, j) * d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || scalar_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(c, j);
        inv(i, j) = inv(i, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

// Basis of the null space of m, as columns of the returned matrix.
template <class T>
Matrix<T> kernel_basis(Matrix<T> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && scalar_is_zero(m(piv, c))) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || scalar_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t nullity = cols - pivot_col.size();
  Matrix<T> basis(cols, nullity);
  std::size_t out = 0;
  for (std::size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    basis(free_c, out) = T(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      basis(pivot_col[i], out) = -m(i, free_c);
    ++out;
  }
  return basis;
}

}  // namespace sonnp

#endif  // SONNP_MATRIX_H

#pragma once

#include <bit>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvtk {

// Dense matrix over a ring whose zero and one are supplied by value
// (polynomial rings and function fields carry their parent ring).
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), zero_(zero), a_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const T& zero() const { return zero_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x.rows_, y.cols_, x.zero_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == x.zero_) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!(y(k, j) == x.zero_)) r(i, j) = r(i, j) + x(i, k) * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] = x.a_[k] + y.a_[k];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] = x.a_[k] - y.a_[k];
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (std::size_t k = 0; k < x.a_.size(); ++k)
      if (!(x.a_[k] == y.a_[k])) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(rows_, cols_, f(zero_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix r(rs.size(), cs.size(), zero_);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

  bool is_upper_unitriangular(const T& one) const { return triangular(one, true); }
  bool is_lower_unitriangular(const T& one) const { return triangular(one, false); }

 private:
  bool triangular(const T& one, bool upper) const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& v = (*this)(i, j);
        if (i == j && !(v == one)) return false;
        if ((upper ? i > j : i < j) && !(v == zero_)) return false;
      }
    return true;
  }

  std::size_t rows_, cols_;
  T zero_;
  std::vector<T> a_;
};

// Inverse of a unitriangular matrix (upper or lower) using ring operations only.
template <class T>
Matrix<T> unitriangular_inverse(const Matrix<T>& u, const T& one) {
  std::size_t n = u.rows();
  Matrix<T> nil = u - Matrix<T>::identity(n, u.zero(), one);
  // (1 + N)^{-1} = 1 - N + N^2 - ...
  Matrix<T> term = Matrix<T>::identity(n, u.zero(), one), sum = term;
  for (std::size_t k = 1; k < n; ++k) {
    term = term * nil;
    sum = k % 2 ? sum - term : sum + term;
  }
  return sum;
}

// Determinant by cofactor-free Gaussian elimination over a field.
template <class T>
T determinant(Matrix<T> a, const T& one) {
  std::size_t n = a.rows();
  T det = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == a.zero()) ++p;
    if (p == n) return a.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = a.zero() - det;
    }
    det = det * a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == a.zero()) continue;
      T f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) = a(r, j) - f * a(c, j);
    }
  }
  return det;
}

// Minor on the given rows and columns by expansion over column subsets; needs
// no division, so it suits polynomial entries. At most 20 columns.
template <class T>
T minor(const Matrix<T>& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, const T& one) {
  std::size_t k = rows.size();
  if (cols.size() != k || k > 20) throw std::invalid_argument("bad minor shape");
  std::vector<T> f(std::size_t{1} << k, a.zero());
  std::vector<bool> live(f.size(), false);
  f[0] = one;
  live[0] = true;
  for (std::size_t mask = 1; mask < f.size(); ++mask) {
    std::size_t r = std::popcount(mask) - 1;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(mask >> c & 1) || !live[mask ^ (std::size_t{1} << c)]) continue;
      const T& x = a(rows[r], cols[c]);
      if (x == a.zero()) continue;
      T term = x * f[mask ^ (std::size_t{1} << c)];
      f[mask] = std::popcount(mask >> (c + 1)) % 2 ? f[mask] - term : f[mask] + term;
      live[mask] = true;
    }
  }
  return f.back();
}

}  // namespace mvtk

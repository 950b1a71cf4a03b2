#ifndef LATTICEROOT_MATRIX_HPP
#define LATTICEROOT_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "latticeroot/rational.hpp"

namespace latticeroot {

// Dense row-major square-or-rectangular matrix. Small sizes only (plumbing graphs
// rarely exceed a few hundred vertices).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T, class V>
std::vector<V> mat_vec(const Matrix<T>& m, const std::vector<V>& v) {
  std::vector<V> out(m.rows(), V(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != T(0)) out[i] += V(m(i, j)) * v[j];
  return out;
}

// Fraction-free Bareiss elimination without pivoting. Returns the leading
// principal minors d_1..d_n; when one vanishes the remaining entries are 0 and
// `complete` is false.
struct LeadingMinors {
  std::vector<BigInt> minors;
  bool complete = true;
};

template <class T>
LeadingMinors leading_minors(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  Matrix<BigInt> a = m.template cast<BigInt>();
  LeadingMinors out;
  out.minors.assign(n, BigInt(0));
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      out.complete = false;
      return out;
    }
    out.minors[k] = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return out;
}

// Exact determinant by Bareiss with row pivoting.
template <class T>
BigInt determinant(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix<BigInt> a = m.template cast<BigInt>();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Gauss-Jordan over the rationals. Throws NoSolution for singular input.
inline Matrix<Rational> inverse(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  Matrix<Rational> a = m, inv = Matrix<Rational>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(Errc::NoSolution, "matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (a(c, j) != 0) a(i, j) -= f * a(c, j);
        if (inv(c, j) != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
};

// Symmetric congruence diagonalization (Sylvester's law of inertia).
template <class T>
Inertia inertia(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  Matrix<Rational> a = m.template cast<Rational>();
  std::vector<bool> done(n, false);
  Inertia out;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && a(i, i) != 0) piv = i;
    if (piv == n) {
      // All remaining diagonal entries vanish; an off-diagonal entry lets us
      // manufacture a nonzero diagonal by adding row/col j to row/col i.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        for (std::size_t i = 0; i < n; ++i)
          if (!done[i]) ++out.zero;
        return out;
      }
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      piv = pi;
    }
    const Rational d = a(piv, piv);
    if (d > 0) ++out.positive; else ++out.negative;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, piv) == 0) continue;
      Rational f = a(i, piv) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && a(piv, j) != 0) a(i, j) -= f * a(piv, j);
      a(i, piv) = 0;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j]) a(piv, j) = 0;
  }
  return out;
}

}  // namespace latticeroot

#endif

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "muhard/error.hpp"
#include "muhard/rational.hpp"

namespace muhard {

using Complex = std::complex<double>;

/// Dense row-major matrix over either exact complex rationals or doubles.
/// The scalar type is fixed at compile time, so an exact matrix can only
/// become floating point through an explicit to_float() call.
template <typename T>
class DenseMatrix {
 public:
  using Scalar = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw DimensionError("entry count does not match rows*cols");
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// E_{i,j} with 0-based indices.
  static DenseMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    DenseMatrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<T> entries() { return entries_; }
  std::span<const T> entries() const { return entries_; }

  DenseMatrix& operator+=(const DenseMatrix& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }
  DenseMatrix& operator*=(const T& scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void require_same_shape(const DenseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shapes differ");
  }

  static bool is_zero(const T& v) {
    if constexpr (std::is_same_v<T, RationalComplex>) {
      return v.is_zero();
    } else {
      return v == T(0);
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using ExactMatrix = DenseMatrix<RationalComplex>;
using FloatMatrix = DenseMatrix<Complex>;

/// Which tensor factor a partial trace removes. The Choi matrix is
/// J(Φ) = Σ Φ(E_ij) ⊗ E_ij, so Left removes the output factor.
enum class TracedFactor { Left, Right };

namespace detail {
inline Complex scalar_conj(const Complex& v) { return std::conj(v); }
inline RationalComplex scalar_conj(const RationalComplex& v) { return v.conj(); }
inline bool scalar_is_zero(const Complex& v) { return v == Complex(0.0); }
inline bool scalar_is_zero(const RationalComplex& v) { return v.is_zero(); }
}  // namespace detail

template <typename T>
DenseMatrix<T> adjoint(const DenseMatrix<T>& a) {
  DenseMatrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::scalar_conj(a(i, j));
  return out;
}

template <typename T>
T trace(const DenseMatrix<T>& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square matrix");
  T out{};
  for (std::size_t i = 0; i < a.rows(); ++i) out += a(i, i);
  return out;
}

/// Hilbert-Schmidt inner product <A, B> = Tr(A* B).
template <typename T>
T inner(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("inner product: shapes differ");
  T out{};
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (detail::scalar_is_zero(ea[i]) || detail::scalar_is_zero(eb[i])) continue;
    out += detail::scalar_conj(ea[i]) * eb[i];
  }
  return out;
}

/// vec(A) = Σ A(i,j) e_i ⊗ e_j: the rows of A stacked as one column.
template <typename T>
std::vector<T> vec(const DenseMatrix<T>& a) {
  if (!a.is_square()) throw DimensionError("vec expects a square operator");
  return {a.entries().begin(), a.entries().end()};
}

template <typename T>
DenseMatrix<T> unvec(std::span<const T> v, std::size_t n) {
  if (v.size() != n * n) throw DimensionError("unvec: length is not n^2");
  return DenseMatrix<T>(n, n, std::vector<T>(v.begin(), v.end()));
}

/// u v* for column vectors u, v.
template <typename T>
DenseMatrix<T> outer(std::span<const T> u, std::span<const T> v) {
  DenseMatrix<T> out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (detail::scalar_is_zero(u[i])) continue;
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * detail::scalar_conj(v[j]);
  }
  return out;
}

template <typename T>
DenseMatrix<T> kron(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const T& aij = a(i1, j1);
      if (detail::scalar_is_zero(aij)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
    }
  }
  return out;
}

/// Partial trace of an n²×n² operator on C^n ⊗ C^n.
template <typename T>
DenseMatrix<T> partial_trace(const DenseMatrix<T>& x, TracedFactor side, std::size_t n) {
  if (x.rows() != n * n || x.cols() != n * n) {
    throw DimensionError("partial_trace: expected " + std::to_string(n * n) + "x" + std::to_string(n * n) +
                         " operator");
  }
  DenseMatrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc{};
      for (std::size_t k = 0; k < n; ++k) {
        acc += side == TracedFactor::Left ? x(k * n + i, k * n + j) : x(i * n + k, j * n + k);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

template <typename T>
double frobenius_norm_sq(const DenseMatrix<T>& a);

template <>
inline double frobenius_norm_sq(const FloatMatrix& a) {
  double s = 0.0;
  for (const auto& e : a.entries()) s += std::norm(e);
  return s;
}

/// ‖A‖₂² computed exactly.
Rational exact_frobenius_norm_sq(const ExactMatrix& a);
bool is_hermitian(const ExactMatrix& a);
FloatMatrix to_float(const ExactMatrix& a);

}  // namespace muhard

#pragma once

#include <cstddef>
#include <vector>

#include "muhard/matrix.hpp"

namespace muhard {

/// Unitary quadratic minimization: is min_U Σ|<A_j, U>|² at most alpha, or
/// at least alpha + 1/m? precision_m carries unary semantics.
class UqmInstance {
 public:
  /// Throws PreconditionError if some ‖A_j‖₂ > 1 (checked exactly) or an
  /// operator is not dim×dim.
  UqmInstance(std::size_t dim, std::vector<ExactMatrix> operators, Rational alpha, Integer precision_m);

  std::size_t dim() const { return dim_; }
  const std::vector<ExactMatrix>& operators() const { return operators_; }
  const Rational& alpha() const { return alpha_; }
  const Integer& precision_m() const { return precision_m_; }

  friend bool operator==(const UqmInstance&, const UqmInstance&) = default;

 private:
  std::size_t dim_;
  std::vector<ExactMatrix> operators_;
  Rational alpha_;
  Integer precision_m_;
};

/// Weak optimization over K_N: u ∈ R^N with ‖u‖ ≤ 1, threshold beta.
class WoptInstance {
 public:
  WoptInstance(std::vector<Rational> u, Rational beta, Integer precision_m);

  std::size_t dimension() const { return u_.size(); }
  const std::vector<Rational>& u() const { return u_; }
  const Rational& beta() const { return beta_; }
  const Integer& precision_m() const { return precision_m_; }

  friend bool operator==(const WoptInstance&, const WoptInstance&) = default;

 private:
  std::vector<Rational> u_;
  Rational beta_;
  Integer precision_m_;
};

/// Weak membership in K_N for a rational point x.
class WmemInstance {
 public:
  WmemInstance(std::vector<Rational> x, Integer precision_m);

  std::size_t dimension() const { return x_.size(); }
  const std::vector<Rational>& x() const { return x_; }
  const Integer& precision_m() const { return precision_m_; }

  friend bool operator==(const WmemInstance&, const WmemInstance&) = default;

 private:
  std::vector<Rational> x_;
  Integer precision_m_;
};

/// Mixed-unitary detection for the Choi matrix of a trace-preserving,
/// unital, Hermitian-preserving map on C^n.
class MudInstance {
 public:
  /// Throws NotInAffineSubspace unless choi is exactly Hermitian with both
  /// partial traces equal to Iₙ.
  MudInstance(std::size_t n, ExactMatrix choi, Integer precision_m);

  std::size_t n() const { return n_; }
  const ExactMatrix& choi() const { return choi_; }
  const Integer& precision_m() const { return precision_m_; }

  friend bool operator==(const MudInstance&, const MudInstance&) = default;

 private:
  std::size_t n_;
  ExactMatrix choi_;
  Integer precision_m_;
};

/// Exact Σ u(j)².
Rational squared_norm(const std::vector<Rational>& v);

}  // namespace muhard

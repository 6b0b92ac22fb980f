#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "muhard/matrix.hpp"

namespace muhard {

/// Nonzero entry re + i·im of a basis operator. Gell-Mann operators only
/// have Gaussian-integer entries.
struct GaussianEntry {
  std::size_t row;
  std::size_t col;
  long re;
  long im;
};

enum class GellMannFamily { Symmetric, Antisymmetric, Diagonal };

/// Generalized Gell-Mann operators G_0 … G_{n²-2} (0-based) in the order:
/// the C(n,2) symmetric E_jk + E_kj, then the C(n,2) antisymmetric
/// iE_jk − iE_kj (both lexicographic in j < k), then the n−1 diagonal
/// Σ_{j≤k} E_jj − k·E_{k+1,k+1}.
class GellMannBasis {
 public:
  explicit GellMannBasis(std::size_t n);

  /// Shared instance per n; safe to call concurrently.
  static std::shared_ptr<const GellMannBasis> cached(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return entries_.size(); }

  std::span<const GaussianEntry> entries(std::size_t j) const { return entries_.at(j); }
  GellMannFamily family(std::size_t j) const;
  /// ‖G_j‖₂², an integer.
  long norm_sq(std::size_t j) const { return norm_sq_.at(j); }

  ExactMatrix exact(std::size_t j) const;
  FloatMatrix dense(std::size_t j) const;

  /// Operators with a nonzero at (row, col), as (index, value) pairs.
  struct Occurrence {
    std::size_t index;
    long re;
    long im;
  };
  std::span<const Occurrence> occurrences(std::size_t row, std::size_t col) const {
    return by_position_[row * n_ + col];
  }

 private:
  std::size_t n_;
  std::size_t pairs_;
  std::vector<std::vector<GaussianEntry>> entries_;
  std::vector<long> norm_sq_;
  std::vector<std::vector<Occurrence>> by_position_;
};

/// H_j = G_a ⊗ G_b with j = a·(n²−1) + b. Operators are generated on demand;
/// only the factor basis is stored.
class TensorBasis {
 public:
  explicit TensorBasis(std::size_t n) : factors_(GellMannBasis::cached(n)) {}

  std::size_t n() const { return factors_->n(); }
  std::size_t size() const { return factors_->size() * factors_->size(); }
  const GellMannBasis& factor_basis() const { return *factors_; }

  std::pair<std::size_t, std::size_t> factors(std::size_t j) const {
    return {j / factors_->size(), j % factors_->size()};
  }
  long norm_sq(std::size_t j) const {
    auto [a, b] = factors(j);
    return factors_->norm_sq(a) * factors_->norm_sq(b);
  }

  /// Calls f(row, col, re, im) for each nonzero of H_j.
  template <typename F>
  void for_each_entry(std::size_t j, F&& f) const {
    auto [a, b] = factors(j);
    const std::size_t n = factors_->n();
    for (const auto& ga : factors_->entries(a)) {
      for (const auto& gb : factors_->entries(b)) {
        f(ga.row * n + gb.row, ga.col * n + gb.col, ga.re * gb.re - ga.im * gb.im, ga.re * gb.im + ga.im * gb.re);
      }
    }
  }

  ExactMatrix exact(std::size_t j) const;
  FloatMatrix dense(std::size_t j) const;

 private:
  std::shared_ptr<const GellMannBasis> factors_;
};

/// Coordinates x ∈ R^N of the affine map φₙ, N = (n²−1)².
template <typename Real>
struct AffinePoint {
  std::size_t n = 0;
  std::vector<Real> x;
};

using ExactPoint = AffinePoint<Rational>;
using FloatPoint = AffinePoint<double>;

std::size_t coordinate_count(std::size_t n);

/// (Iₙ ⊗ Iₙ)/n, the Choi matrix of the completely depolarizing channel.
ExactMatrix depolarizing_choi(std::size_t n);
FloatMatrix depolarizing_choi_float(std::size_t n);

/// φₙ(x) = Σ x(j) H_j + (Iₙ ⊗ Iₙ)/n.
ExactMatrix phi_map(const ExactPoint& point);
FloatMatrix phi_map(const FloatPoint& point);

/// x(j) = <H_j, X> / ‖H_j‖₂². Throws NotInAffineSubspace unless X is
/// Hermitian with both partial traces equal to Iₙ (exactly, or within 1e-10).
ExactPoint phi_inverse(const ExactMatrix& x, std::size_t n);
FloatPoint phi_inverse(const FloatMatrix& x, std::size_t n, double tol = 1e-10);

/// n ≥ 2 with (n²−1)² = k, if one exists.
std::optional<std::size_t> channel_dimension_for(std::size_t k);

/// The convex set K_k: the mixed-unitary coordinates when k = (n²−1)²,
/// otherwise the closed unit ball.
struct MixedUnitaryCoordinates {
  std::size_t n;
};
struct UnitBall {
  std::size_t k;
};
using ConvexFamilyMember = std::variant<MixedUnitaryCoordinates, UnitBall>;
ConvexFamilyMember convex_set_for_dimension(std::size_t k);

}  // namespace muhard

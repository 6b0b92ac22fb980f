#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muhard/audit.hpp"
#include "muhard/graph.hpp"
#include "muhard/instances.hpp"

namespace muhard {

// ---- 3COL → UQM -----------------------------------------------------------

/// Operators E_ij (i ≠ j, row-major) followed by one gadget
/// (E_aa + E_bb + E_{n+j,n+j})/2 per edge; α = 0, m = 526n².
UqmInstance three_col_to_uqm(const Graph& graph);

/// 1/(526n²): the objective floor on no-instances of the gadget.
Rational uqm_gap_threshold(std::size_t vertex_count);

/// U = diag(ω^e(0), …, ω^e(d−1)), ω = exp(2πi/3).
struct DiagonalUnitaryWitness {
  std::size_t n = 0;
  std::vector<std::uint8_t> exponents;

  FloatMatrix realize() const;
};

/// Vertices keep their color; the slack index of edge {a, b} takes the one
/// color missing from {φ(a), φ(b)}. Throws PreconditionError naming the
/// first monochromatic edge.
DiagonalUnitaryWitness coloring_to_unitary(const Graph& graph, const Coloring& coloring);

/// Σ_j |<A_j, D>|² for D = diag(ω^e) evaluated in Q(√3), so cancellations
/// of 1 + ω + ω² are exact. Construct once per instance; evaluate is cheap.
class DiagonalObjective {
 public:
  explicit DiagonalObjective(const UqmInstance& inst);

  std::size_t dim() const { return dim_; }
  QuadraticSurd evaluate(std::span<const std::uint8_t> exponents) const;

 private:
  struct Term {
    std::size_t index;
    std::int64_t re;  // numerator of conj(A(index, index)) over the operator's denominator
    std::int64_t im;
  };
  struct Operator {
    std::vector<Term> terms;
    Integer den_sq;
  };
  struct GenericOperator {
    std::vector<std::pair<std::size_t, RationalComplex>> terms;
  };

  std::size_t dim_;
  std::vector<Operator> small_;
  std::vector<GenericOperator> generic_;
};

// ---- coloring extraction --------------------------------------------------

struct ExtractionResult {
  std::optional<Coloring> coloring;
  std::string failure_reason;

  bool ok() const { return coloring.has_value(); }
};

/// Buckets θ = arg U(r,r) − arg U(b,b) mod 2π per connected component with
/// root r its lowest vertex: S₀ = [11π/6, 2π) ∪ [0, π/6], S₁ = [π/2, 5π/6],
/// S₂ = [7π/6, 3π/2]. Throws DimensionError if U is not (n+m)×(n+m) and
/// PreconditionError if U is not unitary within 1e-8.
ExtractionResult extract_coloring(const Graph& graph, const FloatMatrix& u);

/// Bucket index for an angle in [0, 2π), or nullopt outside S₀ ∪ S₁ ∪ S₂.
std::optional<int> angle_bucket(double theta);

// ---- UQM → WOPT -----------------------------------------------------------

struct WoptReduction {
  WoptInstance instance;
  std::vector<Rational> w;
  std::vector<Rational> v;
  Rational gamma;
  Rational trace_p;
  /// 8kmnN³ and 8kmN²: the truncation grids of u and β.
  Integer u_scale;
  Integer beta_scale;
  /// r = 8kmn⁴N³, the output precision parameter.
  Integer r;
};

/// Nonzeros of P = Σ vec(A_j)vec(A_j)*, keyed by row·n² + col.
std::vector<std::pair<std::size_t, RationalComplex>> uqm_gram_operator(const UqmInstance& inst);

/// Needs k ≥ 1 and n ≥ 2; throws PreconditionError otherwise.
WoptReduction uqm_to_wopt_detailed(const UqmInstance& inst);
WoptInstance uqm_to_wopt(const UqmInstance& inst);

// ---- equality-restricted WOPT ---------------------------------------------

struct RestrictedWopt {
  WoptInstance instance;
  /// True when ‖u‖ was rational and u/‖u‖ was computed without approximation.
  bool exact_normalization = false;
};

/// Outputs (v, δ, 4m) with ‖v‖ = 1 exactly, ‖v − u/‖u‖‖ ≤ 1/(4m(p(N)+1)) and
/// β/‖u‖ + 1/(4m) ≤ δ ≤ β/‖u‖ + 1/(2m). p defaults to N². Throws
/// PreconditionError for u = 0.
RestrictedWopt wopt_to_restricted(const WoptInstance& inst, const std::optional<Polynomial>& p = std::nullopt);

// ---- WMEM → MUD -----------------------------------------------------------

struct MudReduction {
  MudInstance instance;
  /// Set when the input dimension is not (n²−1)² and the answer was decided
  /// directly (true: ‖x‖ ≤ 1). The instance is then the fixed yes/no one.
  std::optional<bool> resolved;
  /// z(j) = trunc(2mN·x(j))/(2mN) on the main branch.
  std::vector<Rational> z;
  Integer common_denominator;
};

MudReduction wmem_to_mud(const WmemInstance& inst);

/// φ₂(0) with m = 3.
MudInstance fixed_mud_yes_instance();
/// The Choi matrix of the 2×2 transpose map (SWAP) with m = 3.
MudInstance fixed_mud_no_instance();

}  // namespace muhard

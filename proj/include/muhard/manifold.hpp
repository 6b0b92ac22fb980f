#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "muhard/objective.hpp"

namespace muhard {

struct SolverConfig {
  std::size_t restarts = 8;
  std::size_t max_iterations = 500;
  double step_size = 0.5;
  double step_decay = 0.5;
  /// A restart stops once an accepted step improves f by less than this.
  double tolerance = 1e-14;
  std::uint64_t seed = 20240611;
  /// Worker threads for independent restarts; results do not depend on it.
  std::size_t threads = 1;
  /// Largest 3^d for which the diagonal warm start is exhaustive.
  std::uint64_t brute_force_budget = 531441;
  bool diagonal_warm_start = true;

  /// Throws PreconditionError on zero counts, tolerance ≤ 0, or a decay
  /// outside (0, 1).
  void validate() const;
};

/// Called with every unitary whose objective is evaluated, including
/// rejected line-search trials. Must be thread-safe when threads > 1.
using EvaluationObserver = std::function<void(const EigenMatrix& u, double value)>;

struct ManifoldResult {
  EigenMatrix u;
  double value = 0;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
  std::size_t accepted_steps = 0;
  std::vector<double> restart_values;
};

/// Riemannian gradient descent on U(n) with QR retraction and backtracking.
/// Restart i < warm_starts.size() starts from warm_starts[i]; the others
/// start from Haar-random unitaries drawn from an RNG seeded by (seed, i).
ManifoldResult minimize_unitary(const QuadraticObjective& f, const SolverConfig& cfg,
                                const std::vector<EigenMatrix>& warm_starts = {},
                                const EvaluationObserver& observer = nullptr);

/// minimize_unitary on Σ|<A_j, U>|² with restart 0 warm-started at the best
/// ω-diagonal (exhaustive within budget, local search beyond it).
ManifoldResult minimize_uqm_manifold(const UqmInstance& inst, const SolverConfig& cfg,
                                     const EvaluationObserver& observer = nullptr);

/// RNG stream owned by restart i.
std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace muhard

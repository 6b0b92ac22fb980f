#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muhard/instances.hpp"
#include "muhard/linalg.hpp"

namespace muhard {

/// Spectral distance ‖J − (Iₙ⊗Iₙ)/n‖.
double ball_distance(const FloatMatrix& choi, std::size_t n);

/// True iff the spectral distance is at most 1/(n(n²−1)) − 1e-12. Throws
/// NotInAffineSubspace unless J is Hermitian with partial traces Iₙ.
bool ball_certificate(const FloatMatrix& choi, std::size_t n);

struct DecompositionConfig {
  std::size_t max_iterations = 500;
  /// Target ‖J − Σ p_k vec(U_k)vec(U_k)*‖₂.
  double tolerance = 1e-6;
  std::size_t subproblem_restarts = 3;
  std::size_t subproblem_iterations = 300;
  /// Passes of per-atom local moves after each weight refit; 0 disables them.
  std::size_t refine_sweeps = 3;
  /// Random starts of the rotation search per atom count; 0 disables it.
  std::size_t rotation_restarts = 10;
  std::size_t rotation_iterations = 300;
  std::size_t rotation_polish_iterations = 100;
  /// Atom counts tried run from rank(J) to rank(J) + rotation_extra_atoms.
  std::size_t rotation_extra_atoms = 1;
  std::uint64_t seed = 20240611;
};

struct DecompositionCertificate {
  std::vector<double> weights;
  std::vector<FloatMatrix> unitaries;
  /// Frobenius norm of J − Σ p_k vec(U_k)vec(U_k)*.
  double residual = 0;
  std::size_t iterations = 0;
};

/// Fully corrective Frank–Wolfe: each new atom maximizes <R, vec(U)vec(U)*>
/// for the current residual R via the manifold solver, and the weights are
/// refit by nonnegative least squares on the simplex. Throws
/// PreconditionError unless J is Hermitian with partial traces Iₙ and PSD
/// within 1e-9.
DecompositionCertificate frank_wolfe_decompose(const FloatMatrix& choi, std::size_t n,
                                               const DecompositionConfig& cfg = {});

/// Residual of a certificate against J, recomputed from its atoms.
double certificate_residual(const FloatMatrix& choi, const DecompositionCertificate& cert);

enum class MudOutcome { YesCertified, YesByBall, NoEvidence, Unknown };

std::string to_string(MudOutcome outcome);

struct MudVerdict {
  MudOutcome outcome = MudOutcome::Unknown;
  std::optional<DecompositionCertificate> certificate;
  /// Smallest residual reached by the decomposition stage (NaN if skipped).
  double best_residual = 0;
  double min_eigenvalue = 0;
  double ball_distance = 0;
  double ball_radius = 0;
  /// min(1/(2m), 1e-6, configured tolerance).
  double residual_threshold = 0;
};

/// PSD check, then the ball test, then Frank–Wolfe; "no-evidence" only when
/// J has an eigenvalue below −1e-9.
MudVerdict mud_decide(const MudInstance& inst, const DecompositionConfig& cfg = {});

}  // namespace muhard

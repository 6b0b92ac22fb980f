#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace muhard {

/// Outcome for three unit-ish complex numbers summing to nearly zero: each
/// cyclic argument difference should sit within 6ε of 2π/3 or 4π/3.
struct AngleLemmaReport {
  /// False when a premise fails; the remaining fields are then unset.
  bool premises_hold = false;
  std::string premise_failure;
  /// arg α − arg β, arg β − arg γ, arg γ − arg α, each in [0, 2π).
  std::array<double, 3> theta{};
  std::array<bool, 3> passes{};
  /// 6ε minus the distance to the nearer of 2π/3, 4π/3 (negative = violation).
  std::array<double, 3> margin{};
  bool verdict = false;
};

/// Premises and conclusion are checked with 1e-12 slack.
AngleLemmaReport check_angle_lemma(std::complex<double> alpha, std::complex<double> beta,
                                   std::complex<double> gamma, double epsilon);

struct LemmaSample {
  std::complex<double> alpha, beta, gamma;
  double epsilon;
};

struct LemmaMonteCarloSummary {
  std::size_t samples = 0;
  std::size_t rejected_draws = 0;
  std::size_t violations = 0;
  double worst_margin = 0;
  std::optional<LemmaSample> counterexample;
};

/// Draws ε ∈ [0, 1/6], moduli in [1−ε, 1] and phases near a rotated
/// (1, ω, ω²) or (1, ω², ω), keeping only triples with |α+β+γ| ≤ ε.
LemmaMonteCarloSummary run_angle_lemma_monte_carlo(std::size_t samples, std::uint64_t seed);

}  // namespace muhard

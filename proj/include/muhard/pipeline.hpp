#pragma once

#include <optional>
#include <string>

#include "muhard/manifold.hpp"
#include "muhard/mixed_unitary.hpp"
#include "muhard/reductions.hpp"
#include "muhard/serialize.hpp"

namespace muhard {

struct PipelineConfig {
  SolverConfig solver;
  DecompositionConfig decomposition;
  /// Working precision for the WMEM probe; r itself is only recorded.
  Integer working_m{1000000000};
  /// Spectral size of the random perturbation applied to the witness.
  double perturbation = 1e-4;
};

struct PipelineResult {
  explicit PipelineResult(UqmInstance instance) : uqm(std::move(instance)) {}

  std::size_t vertices = 0;
  std::size_t edges = 0;
  UqmInstance uqm;
  Rational threshold;

  ManifoldResult solve;
  bool below_threshold = false;
  std::optional<ExtractionResult> solver_extraction;

  std::optional<DiagonalUnitaryWitness> witness;
  std::optional<QuadraticSurd> witness_exact_objective;
  double witness_objective = 0;
  std::optional<ExtractionResult> witness_extraction;
  std::optional<ExtractionResult> perturbed_extraction;
  double perturbation_distance = 0;

  /// Absent when the instance has dimension 1 or no operators.
  std::optional<WoptReduction> wopt;
  std::optional<MudReduction> mud;
  std::optional<MudVerdict> verdict;
  std::string skipped_reason;

  Json metrics() const;
};

/// 3COL → UQM, solve, extract, witness check, UQM → WOPT, then the WMEM
/// probe φ⁻¹(J(U_best)) through WMEM → MUD and mud_decide.
PipelineResult run_pipeline(const Graph& graph, const PipelineConfig& cfg = {});

}  // namespace muhard

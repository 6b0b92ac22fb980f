#include "muhard/pipeline.hpp"

#include "muhard/audit.hpp"
#include "muhard/basis.hpp"
#include "muhard/objective.hpp"

namespace muhard {

namespace {

Json extraction_json(const std::optional<ExtractionResult>& r) {
  if (!r) return nullptr;
  Json j{{"ok", r->ok()}};
  if (r->ok()) {
    Json colors = Json::array();
    for (auto c : r->coloring->colors) colors.push_back(int(c));
    j["coloring"] = std::move(colors);
  } else {
    j["failure"] = r->failure_reason;
  }
  return j;
}

Json number_or_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

EigenMatrix perturb(const EigenMatrix& u, double size, std::uint64_t seed) {
  const Eigen::Index n = u.rows();
  auto rng = restart_rng(seed, 0xC0FFEE);
  std::normal_distribution<double> gauss;
  EigenMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  EigenMatrix h = (g + g.adjoint()) * 0.5;
  const double spectral = norm(from_eigen(h), NormKind::Spectral);
  // ‖exp(iH) − I‖ = 2 sin(‖H‖/2) for ‖H‖ ≤ π.
  h *= 2 * std::asin(size / 2) / spectral;
  return u * exp_i_hermitian(h);
}

}  // namespace

PipelineResult run_pipeline(const Graph& graph, const PipelineConfig& cfg) {
  PipelineResult out(three_col_to_uqm(graph));
  out.vertices = graph.vertex_count();
  out.edges = graph.edge_count();
  out.threshold = uqm_gap_threshold(out.vertices);
  const double threshold = out.threshold.get_d();

  out.solve = minimize_uqm_manifold(out.uqm, cfg.solver);
  out.below_threshold = out.solve.value < threshold;
  std::optional<Coloring> coloring;
  if (out.below_threshold) {
    out.solver_extraction = extract_coloring(graph, from_eigen(out.solve.u));
    if (out.solver_extraction->ok()) coloring = out.solver_extraction->coloring;
  }

  EigenMatrix best_channel = out.solve.u;
  if (coloring) {
    out.witness = coloring_to_unitary(graph, *coloring);
    out.witness_exact_objective = DiagonalObjective(out.uqm).evaluate(out.witness->exponents);
    const FloatMatrix w = out.witness->realize();
    out.witness_objective = uqm_objective(out.uqm, w);
    out.witness_extraction = extract_coloring(graph, w);
    const EigenMatrix wp = perturb(to_eigen(w), cfg.perturbation, cfg.solver.seed);
    out.perturbation_distance = norm(from_eigen(wp - to_eigen(w)), NormKind::Spectral);
    out.perturbed_extraction = extract_coloring(graph, from_eigen(wp));
    best_channel = to_eigen(w);
  }

  const std::size_t d = out.uqm.dim();
  if (d < 2 || out.uqm.operators().empty()) {
    out.skipped_reason = "operator dimension " + std::to_string(d) + " leaves no Gell-Mann coordinates";
    return out;
  }
  out.wopt = uqm_to_wopt_detailed(out.uqm);

  const FloatPoint probe = phi_inverse(choi_of_unitary(from_eigen(best_channel)), d, 1e-8);
  std::vector<Rational> x;
  x.reserve(probe.x.size());
  for (double v : probe.x) x.push_back(rational_from_double(v));
  out.mud = wmem_to_mud(WmemInstance(std::move(x), cfg.working_m));
  out.verdict = mud_decide(out.mud->instance, cfg.decomposition);
  return out;
}

Json PipelineResult::metrics() const {
  Json m;
  m["graph.vertices"] = vertices;
  m["graph.edges"] = edges;
  m["uqm.dimension"] = uqm.dim();
  m["uqm.operators"] = uqm.operators().size();
  m["uqm.precision_m"] = uqm.precision_m().get_str();
  m["uqm.threshold"] = threshold.get_str();
  const auto audit = audit_p_bounded(AnyInstance(uqm), Polynomial::constant(2));
  m["uqm.audit"] = to_json(audit);

  m["solver.best_value"] = solve.value;
  m["solver.best_restart"] = solve.best_restart;
  m["solver.restarts"] = solve.restart_values.size();
  m["solver.evaluations"] = solve.evaluations;
  m["solver.below_threshold"] = below_threshold;
  m["extraction.solver"] = extraction_json(solver_extraction);

  if (witness) {
    Json e = Json::array();
    for (auto c : witness->exponents) e.push_back(int(c));
    m["witness.exponents"] = std::move(e);
    m["witness.exact_objective_is_zero"] = witness_exact_objective->sign() == 0;
    m["witness.objective"] = witness_objective;
    m["perturbation.spectral_distance"] = perturbation_distance;
  } else {
    m["witness.exponents"] = nullptr;
  }
  m["extraction.witness"] = extraction_json(witness_extraction);
  m["extraction.perturbed"] = extraction_json(perturbed_extraction);

  if (!skipped_reason.empty()) m["skipped"] = skipped_reason;
  if (wopt) {
    const Rational gap = abs(wopt->instance.beta() - wopt->gamma);
    m["wopt.dimension"] = wopt->instance.dimension();
    m["wopt.r"] = wopt->r.get_str();
    m["wopt.gamma"] = wopt->gamma.get_str();
    m["wopt.beta"] = wopt->instance.beta().get_str();
    m["wopt.trace_p"] = wopt->trace_p.get_str();
    m["wopt.beta_within_grid"] = gap <= Rational(1) / Rational(wopt->beta_scale);
    m["wopt.u_norm_at_most_one"] = squared_norm(wopt->instance.u()) <= 1;
  }
  if (mud) {
    m["mud.precision_m"] = mud->instance.precision_m().get_str();
    m["mud.n"] = mud->instance.n();
    m["mud.common_denominator"] = mud->common_denominator.get_str();
  }
  if (verdict) {
    m["mud.outcome"] = to_string(verdict->outcome);
    m["mud.min_eigenvalue"] = verdict->min_eigenvalue;
    m["mud.ball_distance"] = verdict->ball_distance;
    m["mud.best_residual"] = number_or_null(verdict->best_residual);
    m["mud.residual_threshold"] = verdict->residual_threshold;
    m["mud.atoms"] = verdict->certificate ? verdict->certificate->unitaries.size() : 0;
  }
  return m;
}

}  // namespace muhard

#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "muhard/audit.hpp"
#include "muhard/diagonal.hpp"
#include "muhard/error.hpp"
#include "muhard/manifold.hpp"
#include "muhard/mixed_unitary.hpp"
#include "muhard/pipeline.hpp"
#include "muhard/reductions.hpp"
#include "verify.hpp"

namespace muhard::cli {

namespace {

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::array();
  Json metrics = Json::object();
  std::uint64_t seed = 0;

  void input(const std::string& path) { inputs[path] = file_digest(path); }
  void output(const std::string& path, const Json& doc) {
    write_file(path, doc.dump(1) + "\n");
    outputs.push_back(path);
  }

  Json to_json(int exit_code) const {
    return Json{{"schema", kSchemaVersion}, {"type", "report"},     {"command", command},
                {"inputs", inputs},         {"outputs", outputs},   {"metrics", metrics},
                {"seed", seed},             {"exit_code", exit_code}};
  }
};

struct Options {
  std::uint64_t seed = SolverConfig{}.seed;
  std::size_t restarts = SolverConfig{}.restarts;
  std::size_t max_iter = 0;  // 0: command default
  std::size_t samples = 10000;
  double tolerance = 1e-6;
  bool brute_diag = false;
  std::string out_path;
  std::string report_path;
  std::string working_m = "1000000000";
  std::string poly = "0,0,1";
  std::string assert_floor;
  std::size_t threads = 1;

  std::string kind, input, output, unitary, suite;
};

Json coloring_json(const Coloring& c) {
  Json out = Json::array();
  for (auto v : c.colors) out.push_back(int(v));
  return out;
}

Json surd_json(const QuadraticSurd& s) {
  return Json{{"rational_part", s.rational_part().get_str()},
              {"sqrt3_part", s.sqrt3_part().get_str()},
              {"approx", s.to_double()}};
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  if (o.max_iter) cfg.max_iterations = o.max_iter;
  cfg.threads = o.threads;
  return cfg;
}

DecompositionConfig decomposition_config(const Options& o) {
  DecompositionConfig cfg;
  cfg.seed = o.seed;
  cfg.tolerance = o.tolerance;
  if (o.max_iter) cfg.max_iterations = o.max_iter;
  return cfg;
}

int cmd_reduce(const Options& o, Report& rep) {
  rep.command = "reduce " + o.kind;
  rep.input(o.input);
  const std::string text = read_file(o.input);
  std::optional<AnyInstance> result;
  if (o.kind == "3col-to-uqm") {
    const Graph g = parse_dimacs(text);
    rep.metrics["graph.vertices"] = g.vertex_count();
    rep.metrics["graph.edges"] = g.edge_count();
    UqmInstance u = three_col_to_uqm(g);
    rep.metrics["uqm.operators"] = u.operators().size();
    rep.metrics["uqm.dimension"] = u.dim();
    rep.metrics["uqm.precision_m"] = u.precision_m().get_str();
    result = std::move(u);
  } else if (o.kind == "uqm-to-wopt") {
    const auto red = uqm_to_wopt_detailed(instance_as<UqmInstance>(parse_json(text)));
    rep.metrics["wopt.dimension"] = red.instance.dimension();
    rep.metrics["wopt.r"] = red.r.get_str();
    rep.metrics["wopt.gamma"] = red.gamma.get_str();
    rep.metrics["wopt.beta"] = red.instance.beta().get_str();
    rep.metrics["wopt.trace_p"] = red.trace_p.get_str();
    result = red.instance;
  } else if (o.kind == "wopt-to-restricted") {
    const auto red = wopt_to_restricted(instance_as<WoptInstance>(parse_json(text)));
    rep.metrics["restricted.exact_normalization"] = red.exact_normalization;
    rep.metrics["restricted.delta"] = red.instance.beta().get_str();
    rep.metrics["restricted.precision_m"] = red.instance.precision_m().get_str();
    result = red.instance;
  } else if (o.kind == "wmem-to-mud") {
    const auto red = wmem_to_mud(instance_as<WmemInstance>(parse_json(text)));
    rep.metrics["mud.n"] = red.instance.n();
    rep.metrics["mud.precision_m"] = red.instance.precision_m().get_str();
    rep.metrics["mud.resolved"] = red.resolved ? Json(*red.resolved ? "yes" : "no") : Json(nullptr);
    if (!red.resolved) rep.metrics["mud.common_denominator"] = red.common_denominator.get_str();
    result = red.instance;
  } else {
    throw std::invalid_argument("unknown reduction '" + o.kind + "'");
  }
  rep.metrics["audit.polynomial"] = o.poly;
  rep.metrics["audit"] = to_json(audit_p_bounded(*result, Polynomial::parse(o.poly)));
  std::visit([&](const auto& inst) { rep.output(o.output, to_json(inst)); }, *result);
  return kOk;
}

int cmd_solve(const Options& o, Report& rep) {
  rep.command = "solve";
  rep.input(o.input);
  const UqmInstance inst = instance_as<UqmInstance>(parse_json(read_file(o.input)));
  SolverConfig cfg = solver_config(o);
  cfg.diagonal_warm_start = o.brute_diag || diagonal_candidate_count(inst.dim()) <= cfg.brute_force_budget;

  std::optional<Rational> floor;
  if (!o.assert_floor.empty()) {
    try {
      floor = Rational(o.assert_floor);
      floor->canonicalize();
    } catch (const std::invalid_argument&) {
      throw SchemaError("--assert-floor: expected a rational like 1/8416");
    }
  }
  std::size_t evaluated = 0, violations = 0;
  double min_seen = std::numeric_limits<double>::infinity();
  const double floor_d = floor ? floor->get_d() : 0.0;
  EvaluationObserver observer = [&](const EigenMatrix&, double v) {
    ++evaluated;
    min_seen = std::min(min_seen, v);
    if (floor && v < floor_d) ++violations;
  };
  cfg.threads = 1;  // the observer above is not synchronized

  int code = kOk;
  if (o.brute_diag) {
    std::size_t diag_violations = 0;
    DiagonalVisitor visit = [&](std::span<const std::uint8_t>, const QuadraticSurd& v) {
      if (floor && v < *floor) ++diag_violations;
    };
    const auto diag = minimize_uqm_diagonal_bruteforce(inst, cfg.brute_force_budget, visit);
    rep.metrics["diagonal.candidates"] = diag.candidates;
    rep.metrics["diagonal.min_value"] = surd_json(diag.value);
    Json e = Json::array();
    for (auto c : diag.witness.exponents) e.push_back(int(c));
    rep.metrics["diagonal.exponents"] = std::move(e);
    if (floor) rep.metrics["diagonal.floor_violations"] = diag_violations;
    if (diag_violations) code = kViolation;
  }
  const ManifoldResult res = minimize_uqm_manifold(inst, cfg, observer);
  rep.metrics["solver.best_value"] = res.value;
  rep.metrics["solver.best_restart"] = res.best_restart;
  rep.metrics["solver.restarts"] = res.restart_values.size();
  rep.metrics["solver.evaluations"] = evaluated;
  rep.metrics["solver.accepted_steps"] = res.accepted_steps;
  rep.metrics["solver.min_evaluated"] = min_seen;
  if (floor) {
    rep.metrics["solver.floor"] = floor->get_str();
    rep.metrics["solver.floor_violations"] = violations;
    if (violations) code = kViolation;
  }
  if (!o.out_path.empty()) rep.output(o.out_path, unitary_to_json(from_eigen(res.u)));
  return code;
}

int cmd_extract(const Options& o, Report& rep) {
  rep.command = "extract";
  rep.input(o.input);
  rep.input(o.unitary);
  const Graph g = parse_dimacs(read_file(o.input));
  const FloatMatrix u = unitary_from_json(parse_json(read_file(o.unitary)));
  const ExtractionResult r = extract_coloring(g, u);
  rep.metrics["extraction.ok"] = r.ok();
  if (r.ok()) {
    rep.metrics["extraction.coloring"] = coloring_json(*r.coloring);
    return kOk;
  }
  rep.metrics["extraction.failure"] = r.failure_reason;
  return kViolation;
}

int cmd_decide(const Options& o, Report& rep) {
  rep.command = "decide";
  rep.input(o.input);
  const MudInstance inst = instance_as<MudInstance>(parse_json(read_file(o.input)));
  const MudVerdict v = mud_decide(inst, decomposition_config(o));
  rep.metrics["mud.outcome"] = to_string(v.outcome);
  rep.metrics["mud.min_eigenvalue"] = v.min_eigenvalue;
  rep.metrics["mud.ball_distance"] = v.ball_distance;
  rep.metrics["mud.ball_radius"] = v.ball_radius;
  rep.metrics["mud.best_residual"] = std::isnan(v.best_residual) ? Json(nullptr) : Json(v.best_residual);
  rep.metrics["mud.residual_threshold"] = v.residual_threshold;
  if (v.certificate) {
    rep.metrics["mud.atoms"] = v.certificate->unitaries.size();
    if (!o.out_path.empty()) {
      Json cert{{"schema", kSchemaVersion}, {"type", "certificate"}, {"residual", v.certificate->residual}};
      cert["weights"] = v.certificate->weights;
      cert["unitaries"] = Json::array();
      for (const auto& u : v.certificate->unitaries) cert["unitaries"].push_back(unitary_to_json(u));
      rep.output(o.out_path, cert);
    }
  }
  return v.outcome == MudOutcome::NoEvidence ? kViolation : kOk;
}

int cmd_verify(const Options& o, Report& rep) {
  rep.command = "verify " + o.suite;
  const std::vector<std::string> suites =
      o.suite == "all" ? std::vector<std::string>{"lemma", "basis", "norms", "reductions"}
                       : std::vector<std::string>{o.suite};
  std::size_t violations = 0;
  Json counterexamples = Json::object();
  for (const auto& s : suites) {
    SuiteResult r = run_suite(s, o.samples, o.seed);
    rep.metrics[s + ".checks"] = r.checks;
    rep.metrics[s + ".violations"] = r.violations;
    for (auto& [k, v] : r.metrics.items()) rep.metrics[k] = v;
    if (!r.counterexample.is_null()) counterexamples[s] = r.counterexample;
    violations += r.violations;
  }
  rep.metrics["violations"] = violations;
  if (violations) {
    rep.metrics["counterexamples"] = counterexamples;
    if (!o.out_path.empty()) rep.output(o.out_path, counterexamples);
  }
  return violations ? kViolation : kOk;
}

int cmd_pipeline(const Options& o, Report& rep) {
  rep.command = "pipeline";
  rep.input(o.input);
  const Graph g = parse_dimacs(read_file(o.input));
  PipelineConfig cfg;
  cfg.solver = solver_config(o);
  cfg.decomposition = decomposition_config(o);
  cfg.working_m = parse_integer(o.working_m);
  if (sgn(cfg.working_m) <= 0) throw SchemaError("--working-m must be positive");
  const PipelineResult res = run_pipeline(g, cfg);
  rep.metrics = res.metrics();

  bool violation = false;
  // Soundness: a value below 1/(526n²) must yield a proper coloring.
  if (res.below_threshold && !(res.solver_extraction && res.solver_extraction->ok())) violation = true;
  if (res.witness) {
    violation = violation || res.witness_exact_objective->sign() != 0 || res.witness_objective > 1e-12 ||
                !res.witness_extraction->ok() || !res.perturbed_extraction->ok();
  }
  rep.metrics["pipeline.colorable"] = res.witness.has_value();
  rep.metrics["pipeline.property_violation"] = violation;
  if (!o.out_path.empty() && res.witness) rep.output(o.out_path, unitary_to_json(res.witness->realize()));
  return (violation || !res.witness) ? kViolation : kOk;
}

}  // namespace

std::string file_digest(const std::string& path) {
  const std::string data = read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction chain 3COL -> UQM -> WOPT -> WMEM -> MUD with desk-scale solvers", "muhard"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--report", o.report_path, "Also write the JSON report here");
    sub->add_option("--out", o.out_path, "Output document path");
  };

  auto* reduce = app.add_subcommand("reduce", "Apply one mapping reduction");
  reduce->add_option("kind", o.kind, "3col-to-uqm | uqm-to-wopt | wopt-to-restricted | wmem-to-mud")
      ->required()
      ->check(CLI::IsMember({"3col-to-uqm", "uqm-to-wopt", "wopt-to-restricted", "wmem-to-mud"}));
  reduce->add_option("in", o.input, "Input file")->required();
  reduce->add_option("out", o.output, "Output instance file")->required();
  reduce->add_option("--poly", o.poly, "Audit polynomial coefficients, lowest degree first");
  reduce->add_option("--seed", o.seed, "RNG seed (unused)");
  reduce->add_option("--report", o.report_path, "Also write the JSON report here");

  auto* solve = app.add_subcommand("solve", "Minimize a UQM instance over the unitary group");
  solve->add_option("in", o.input, "UQM instance")->required();
  solve->add_option("--restarts", o.restarts, "Number of restarts")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", o.max_iter, "Iterations per restart")->check(CLI::PositiveNumber);
  solve->add_flag("--brute-diag", o.brute_diag, "Also run the exhaustive diagonal search");
  solve->add_option("--assert-floor", o.assert_floor, "Fail if any evaluated value is below this rational");
  add_common(solve);

  auto* extract = app.add_subcommand("extract", "Recover a 3-coloring from a unitary");
  extract->add_option("graph", o.input, "DIMACS graph")->required();
  extract->add_option("unitary", o.unitary, "Unitary JSON document")->required();
  add_common(extract);

  auto* decide = app.add_subcommand("decide", "Three-valued mixed-unitary decision");
  decide->add_option("in", o.input, "MUD instance")->required();
  decide->add_option("--tolerance", o.tolerance, "Decomposition residual target")->check(CLI::PositiveNumber);
  decide->add_option("--max-iter", o.max_iter, "Frank-Wolfe iterations")->check(CLI::PositiveNumber);
  add_common(decide);

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", o.suite, "lemma | basis | norms | reductions | all")
      ->required()
      ->check(CLI::IsMember({"lemma", "basis", "norms", "reductions", "all"}));
  verify->add_option("--samples", o.samples, "Samples per randomized check")->check(CLI::PositiveNumber);
  add_common(verify);

  auto* pipeline = app.add_subcommand("pipeline", "Run the whole chain on a graph");
  pipeline->add_option("graph", o.input, "DIMACS graph")->required();
  pipeline->add_option("--restarts", o.restarts, "Solver restarts")->check(CLI::PositiveNumber);
  pipeline->add_option("--max-iter", o.max_iter, "Iterations per restart")->check(CLI::PositiveNumber);
  pipeline->add_option("--working-m", o.working_m, "Working precision for the WMEM probe");
  pipeline->add_option("--tolerance", o.tolerance, "Decomposition residual target")->check(CLI::PositiveNumber);
  add_common(pipeline);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Report rep;
  rep.seed = o.seed;
  int code = kOk;
  try {
    if (reduce->parsed()) code = cmd_reduce(o, rep);
    else if (solve->parsed()) code = cmd_solve(o, rep);
    else if (extract->parsed()) code = cmd_extract(o, rep);
    else if (decide->parsed()) code = cmd_decide(o, rep);
    else if (verify->parsed()) code = cmd_verify(o, rep);
    else if (pipeline->parsed()) code = cmd_pipeline(o, rep);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    rep.metrics["error"] = e.what();
    code = kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << o.input << ": " << e.what() << "\n";
    return kInputError;
  } catch (const SchemaError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    // DimensionError and PreconditionError land here.
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = rep.to_json(code).dump(1) + "\n";
  out << text;
  if (!o.report_path.empty()) {
    try {
      write_file(o.report_path, text);
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return code;
}

}  // namespace muhard::cli

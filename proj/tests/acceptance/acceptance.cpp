// Acceptance run: one PASS/FAIL line per criterion.
// Usage: muhard_acceptance <path to muhard executable> <test data dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "muhard/angle_lemma.hpp"
#include "muhard/basis.hpp"
#include "muhard/diagonal.hpp"
#include "muhard/manifold.hpp"
#include "muhard/mixed_unitary.hpp"
#include "muhard/objective.hpp"
#include "muhard/reductions.hpp"
#include "muhard/serialize.hpp"

namespace fs = std::filesystem;
using namespace muhard;

namespace {

std::string g_exe;
fs::path g_data;
fs::path g_tmp;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const fs::path out = g_tmp / "stdout.txt";
  const std::string cmd = g_exe + " " + args + " > " + out.string() + " 2> " + (g_tmp / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

Graph load_graph(const std::string& name) { return parse_dimacs(slurp(g_data / name)); }

Coloring coloring_from(const Json& j) {
  Coloring c;
  for (const auto& v : j) c.colors.push_back(static_cast<std::uint8_t>(v.get<int>()));
  return c;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// ---- 1 ---------------------------------------------------------------------

Outcome witness_yes_case() {
  Outcome o;
  for (const char* name : {"k3.col", "c5.col", "p4.col", "petersen.col"}) {
    const auto t0 = Clock::now();
    const CliRun r = cli("pipeline " + (g_data / name).string());
    const double secs = seconds_since(t0);
    const std::string tag = std::string(name) + ": ";
    o.require(r.code == 0, tag + "exit code " + std::to_string(r.code));
    o.require(secs <= 10.0, tag + "runtime " + fmt(secs) + " s");
    if (r.code != 0) continue;
    const Json m = Json::parse(r.out)["metrics"];
    const Graph g = load_graph(name);
    const double obj = m["witness.objective"].get<double>();
    o.require(obj <= 1e-12, tag + "witness objective " + fmt(obj));
    for (const char* key : {"extraction.witness", "extraction.perturbed"}) {
      const Json& e = m[key];
      const bool ok = e.is_object() && e["ok"] == true && !find_conflict(g, coloring_from(e["coloring"]));
      o.require(ok, tag + key + " did not give a proper coloring");
    }
    const double dist = m["perturbation.spectral_distance"].get<double>();
    o.require(dist > 0.5e-4 && dist <= 1e-4 * (1 + 1e-9), tag + "perturbation size " + fmt(dist));
    o.note(std::string(name) + " " + fmt(secs) + "s");
  }
  return o;
}

// ---- 2 ---------------------------------------------------------------------

Outcome no_case_floor() {
  Outcome o;
  const auto t0 = Clock::now();
  const UqmInstance inst = three_col_to_uqm(complete_graph(4));
  const Rational floor = make_rational(1, 8416);
  o.require(uqm_gap_threshold(4) == floor, "threshold is not 1/8416");
  const double floor_d = floor.get_d();
  const auto f = QuadraticObjective::from_instance(inst);

  std::size_t haar_violations = 0;
  double haar_min = INFINITY;
  std::mt19937_64 rng(8416);
  for (int s = 0; s < 200; ++s) {
    const double v = uqm_objective(inst, from_eigen(haar_unitary(inst.dim(), rng)));
    haar_min = std::min(haar_min, v);
    if (v < floor_d) ++haar_violations;
  }

  std::size_t evals = 0, solver_violations = 0;
  double solver_min = INFINITY;
  SolverConfig cfg;
  cfg.restarts = 20;
  cfg.max_iterations = 500;
  cfg.diagonal_warm_start = false;
  const auto res = minimize_unitary(f, cfg, {}, [&](const EigenMatrix&, double v) {
    ++evals;
    solver_min = std::min(solver_min, v);
    if (v < floor_d) ++solver_violations;
  });

  std::size_t diag_violations = 0;
  const auto diag = minimize_uqm_diagonal_bruteforce(inst, kDefaultDiagonalBudget,
                                                     [&](std::span<const std::uint8_t>, const QuadraticSurd& v) {
                                                       if (v < floor) ++diag_violations;
                                                     });
  const double secs = seconds_since(t0);
  o.require(haar_violations == 0, std::to_string(haar_violations) + " Haar samples below the floor");
  o.require(evals >= 2000, "only " + std::to_string(evals) + " solver iterates");
  o.require(solver_violations == 0, std::to_string(solver_violations) + " solver iterates below the floor");
  o.require(diag.candidates == 59049, "brute force saw " + std::to_string(diag.candidates) + " candidates");
  o.require(diag_violations == 0, std::to_string(diag_violations) + " diagonals below the floor");
  o.require(secs <= 300, "runtime " + fmt(secs) + " s");
  o.note("haar min " + fmt(haar_min) + ", " + std::to_string(evals) + " iterates min " + fmt(solver_min) +
         " (best " + fmt(res.value) + "), diagonal min " + fmt(diag.value.to_double()) + ", " + fmt(secs) + "s");
  return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome planted_optimum() {
  Outcome o;
  const auto t0 = Clock::now();
  const Graph g = complete_graph(3);
  const UqmInstance inst = three_col_to_uqm(g);
  SolverConfig cfg;
  cfg.restarts = 50;
  const auto res = minimize_uqm_manifold(inst, cfg);
  const double secs = seconds_since(t0);
  o.require(res.restart_values.size() == 50, "restart count");
  o.require(res.value < make_rational(1, 4734).get_d(), "best value " + fmt(res.value));
  const auto ex = extract_coloring(g, from_eigen(res.u));
  o.require(ex.ok() && !find_conflict(g, *ex.coloring), "extraction failed: " + ex.failure_reason);
  o.require(secs <= 120, "runtime " + fmt(secs) + " s");
  o.note("best " + fmt(res.value) + ", " + fmt(secs) + "s");
  return o;
}

// ---- 4 ---------------------------------------------------------------------

Outcome angle_lemma() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto s = run_angle_lemma_monte_carlo(100000, 31);
  const double secs = seconds_since(t0);
  o.require(s.samples == 100000, "sample count " + std::to_string(s.samples));
  o.require(s.violations == 0, std::to_string(s.violations) + " violations");
  o.require(secs <= 30, "runtime " + fmt(secs) + " s");
  o.note("worst margin " + fmt(s.worst_margin) + ", " + std::to_string(s.rejected_draws) + " rejected draws, " +
         fmt(secs) + "s");
  return o;
}

// ---- 5 ---------------------------------------------------------------------

Outcome basis_and_affine_map() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (std::size_t n : {2, 3, 4}) {
    const TensorBasis h(n);
    const std::size_t big_n = h.size();
    const std::size_t nn = n * n;
    // Integer entries: the inner products below are exact.
    std::vector<std::vector<std::pair<std::size_t, std::pair<long, long>>>> sparse(big_n);
    for (std::size_t j = 0; j < big_n; ++j) {
      h.for_each_entry(j, [&](std::size_t r, std::size_t c, long re, long im) {
        sparse[j].push_back({r * nn + c, {re, im}});
      });
    }
    std::vector<std::vector<std::pair<long, long>>> dense(big_n, std::vector<std::pair<long, long>>(nn * nn));
    for (std::size_t j = 0; j < big_n; ++j)
      for (const auto& [k, v] : sparse[j]) dense[j][k] = v;
    std::size_t bad_pairs = 0, bad_norms = 0;
    for (std::size_t i = 0; i < big_n; ++i) {
      long self = 0;
      for (const auto& [k, v] : sparse[i]) self += v.first * v.first + v.second * v.second;
      if (self < 1 || self > static_cast<long>(nn * nn) || self != h.norm_sq(i)) ++bad_norms;
      for (std::size_t j = i + 1; j < big_n; ++j) {
        long re = 0, im = 0;
        for (const auto& [k, a] : sparse[i]) {
          const auto& b = dense[j][k];
          re += a.first * b.first + a.second * b.second;
          im += a.first * b.second - a.second * b.first;
        }
        if (re != 0 || im != 0) ++bad_pairs;
      }
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    o.require(bad_pairs == 0, tag + std::to_string(bad_pairs) + " non-orthogonal pairs");
    o.require(bad_norms == 0, tag + std::to_string(bad_norms) + " norms outside [1, n^2]");

    double roundtrip = 0, marginal = 0;
    std::uniform_real_distribution<double> unif(-1, 1);
    const FloatMatrix id = FloatMatrix::identity(n);
    for (int t = 0; t < 100; ++t) {
      FloatPoint x{n, std::vector<double>(big_n)};
      for (auto& v : x.x) v = unif(rng);
      const FloatMatrix j = phi_map(x);
      const FloatPoint back = phi_inverse(j, n, 1e-9);
      for (std::size_t k = 0; k < big_n; ++k) roundtrip = std::max(roundtrip, std::abs(back.x[k] - x.x[k]));
      for (auto side : {TracedFactor::Left, TracedFactor::Right}) {
        const FloatMatrix d = partial_trace(j, side, n) - id;
        for (const auto& e : d.entries()) marginal = std::max(marginal, std::abs(e));
      }
    }
    o.require(roundtrip <= 1e-12, tag + "roundtrip error " + fmt(roundtrip));
    o.require(marginal <= 1e-12, tag + "partial trace error " + fmt(marginal));
    o.note(tag + "roundtrip " + fmt(roundtrip) + ", marginals " + fmt(marginal));
  }
  return o;
}

// ---- 6 ---------------------------------------------------------------------

Outcome ball_points() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t n : {2, 3}) {
    const double radius = 1.0 / (n * (n * n - 1.0));
    std::size_t certified = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::mt19937_64 rng(1000 * n + seed);
      std::normal_distribution<double> gauss;
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      FloatPoint x{n, std::vector<double>(coordinate_count(n))};
      for (auto& v : x.x) v = gauss(rng);
      const double dist = ball_distance(phi_map(x), n);
      const double target = 0.9 * radius * frac(rng);
      for (auto& v : x.x) v *= target / dist;
      const FloatMatrix j = phi_map(x);
      if (ball_distance(j, n) > 0.9 * radius * (1 + 1e-12)) {
        o.require(false, "sampled point outside 0.9 radius");
        continue;
      }
      DecompositionConfig cfg;
      cfg.seed = seed;
      const auto cert = frank_wolfe_decompose(j, n, cfg);
      const double res = certificate_residual(j, cert);
      worst = std::max(worst, res);
      if (res <= 1e-6) ++certified;
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    o.require(certified >= 45, tag + std::to_string(certified) + "/50 certified");
    o.note(tag + std::to_string(certified) + "/50 (worst residual " + fmt(worst) + ")");
  }
  const double secs = seconds_since(t0);
  o.require(secs <= 600, "runtime " + fmt(secs) + " s");
  o.note(fmt(secs) + "s");
  return o;
}

// ---- 7 ---------------------------------------------------------------------

Outcome five_atom_recovery() {
  Outcome o;
  for (std::size_t n : {2, 3}) {
    std::size_t ok = 0;
    double worst = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      std::mt19937_64 rng(7000 + 100 * n + trial);
      std::uniform_real_distribution<double> w(0.05, 1.0);
      std::vector<double> p(5);
      double total = 0;
      for (auto& v : p) total += (v = w(rng));
      FloatMatrix j(n * n, n * n);
      for (std::size_t k = 0; k < 5; ++k)
        j += choi_of_unitary(from_eigen(haar_unitary(n, rng))) * Complex(p[k] / total);
      DecompositionConfig cfg;
      cfg.seed = trial;
      const double res = certificate_residual(j, frank_wolfe_decompose(j, n, cfg));
      worst = std::max(worst, res);
      if (res <= 1e-6) ++ok;
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    o.require(ok >= 18, tag + std::to_string(ok) + "/20 recovered");
    o.note(tag + std::to_string(ok) + "/20 (worst residual " + fmt(worst) + ")");
  }
  return o;
}

// ---- 8 ---------------------------------------------------------------------

Outcome reduction_contracts() {
  Outcome o;
  const UqmInstance inst(2, {ExactMatrix::unit(2, 0, 1)}, 0, Integer(1));
  const WoptReduction red = uqm_to_wopt_detailed(inst);
  bool w_ok = red.w.size() == 9 && red.w[8] == -1;
  for (std::size_t j = 0; j + 1 < red.w.size(); ++j) w_ok = w_ok && red.w[j] == 0;
  o.require(w_ok, "w is not (0,...,0,-1)");
  o.require(squared_norm(red.instance.u()) <= 1, "||u|| > 1");
  // 8kmN² with k = m = 1, N = 9
  o.require(abs(red.instance.beta() - red.gamma) <= make_rational(1, 8 * 81), "|beta - gamma| too large");

  bool denominators = true;
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
  for (std::size_t big_n : {9ul, 64ul}) {
    for (long m : {1L, 3L, 17L}) {
      std::vector<Rational> x(big_n);
      for (auto& v : x) v = make_rational(num(rng), 40 * den(rng));
      const MudReduction r = wmem_to_mud(WmemInstance(x, Integer(m)));
      const Integer expected = 2 * m * Integer(static_cast<unsigned long>(big_n));
      denominators = denominators && r.common_denominator == expected && r.instance.precision_m() == 2 * m;
      for (const auto& z : r.z) denominators = denominators && Rational(z * Rational(expected)).get_den() == 1;
    }
  }
  o.require(denominators, "WMEM->MUD output is not over the common denominator 2mN");

  bool entries = true;
  const RationalComplex half(make_rational(1, 2));
  for (const char* name : {"k3.col", "k4.col", "c5.col", "p4.col", "petersen.col", "single.col", "empty3.col"}) {
    const UqmInstance inst = three_col_to_uqm(load_graph(name));
    for (const auto& a : inst.operators())
      for (const auto& e : a.entries()) entries = entries && (e.is_zero() || e == half || e == RationalComplex(1));
  }
  o.require(entries, "3COL->UQM entry outside {0, 1/2, 1}");
  return o;
}

// ---- 9 ---------------------------------------------------------------------

// ⟨u, φ⁻¹(J(U))⟩ = vec(U)* Q vec(U) with Q = Σ u_j H_j / ‖H_j‖₂².
EigenMatrix linear_functional_matrix(const std::vector<Rational>& u, std::size_t n) {
  const TensorBasis h(n);
  EigenMatrix q = EigenMatrix::Zero(n * n, n * n);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (sgn(u[j]) == 0) continue;
    const double c = Rational(u[j] / h.norm_sq(j)).get_d();
    h.for_each_entry(j, [&](std::size_t r, std::size_t col, long re, long im) { q(r, col) += c * Complex(re, im); });
  }
  return q;
}

Outcome yes_no_preservation() {
  Outcome o;
  const std::size_t n = 2;
  const Integer m(4);
  for (const Rational alpha : {Rational(0), make_rational(-1, 4)}) {
    const bool yes = alpha == 0;
    const UqmInstance inst(n, {ExactMatrix::unit(2, 0, 1)}, alpha, m);
    const WoptReduction red = uqm_to_wopt_detailed(inst);
    const auto& u = red.instance.u();
    const Rational margin = Rational(1) / Rational(red.beta_scale);  // 1/(8kmN²)
    const double beta = red.instance.beta().get_d(), gap = margin.get_d();

    const auto f = QuadraticObjective::from_matrix(linear_functional_matrix(u, n), n);
    SolverConfig cfg;
    cfg.restarts = 16;
    cfg.diagonal_warm_start = false;
    const auto res = minimize_unitary(f, cfg);
    // Independent evaluation at the solver's optimum through φ⁻¹.
    const FloatPoint x = phi_inverse(choi_of_unitary(from_eigen(res.u)), n);
    double direct = 0;
    for (std::size_t j = 0; j < u.size(); ++j) direct += u[j].get_d() * x.x[j];
    o.require(std::abs(direct - res.value) <= 1e-12, "functional mismatch " + fmt(direct - res.value));

    // Diagonal unitaries: a value attained on K_N, hence an upper bound on the minimum.
    double diag_best = INFINITY;
    for (int t = 0; t < 64; ++t) {
      FloatMatrix d = FloatMatrix::identity(n);
      d(1, 1) = std::polar(1.0, 2 * std::numbers::pi * t / 64);
      const FloatPoint xd = phi_inverse(choi_of_unitary(d), n);
      double s = 0;
      for (std::size_t j = 0; j < u.size(); ++j) s += u[j].get_d() * xd.x[j];
      diag_best = std::min(diag_best, s);
    }
    // Lower bound over all of K_N from f ≥ 0: ⟨u,x⟩ ≥ −Tr P/(knN²) − ‖u − v‖·n.
    Rational diff_sq = 0;
    for (std::size_t j = 0; j < u.size(); ++j) diff_sq += (u[j] - red.v[j]) * (u[j] - red.v[j]);
    const Integer big_n(static_cast<unsigned long>(u.size()));
    const double lower =
        Rational(-red.trace_p / Rational(Integer(static_cast<unsigned long>(n)) * big_n * big_n)).get_d() -
        std::sqrt(diff_sq.get_d()) * n;

    const std::string tag = yes ? "alpha=0: " : "alpha=-1/4: ";
    if (yes) {
      o.require(diag_best <= beta - gap, tag + "diagonal value " + fmt(diag_best) + " > beta - gap");
      o.require(res.value <= beta - gap, tag + "search minimum " + fmt(res.value) + " > beta - gap");
    } else {
      o.require(lower >= beta + gap, tag + "lower bound " + fmt(lower) + " < beta + gap");
      o.require(res.value >= beta + gap, tag + "search minimum " + fmt(res.value) + " < beta + gap");
    }
    o.require(lower <= res.value + 1e-12 && res.value <= diag_best + 1e-12, tag + "bounds out of order");
    o.note(tag + "beta " + fmt(beta) + ", min " + fmt(res.value) + ", bounds [" + fmt(lower) + ", " +
           fmt(diag_best) + "]");
  }
  return o;
}

// ---- 10 --------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const std::string d = g_tmp.string() + "/";
  const std::string k3 = (g_data / "k3.col").string();
  {
    std::ofstream(d + "zero9.json") << to_json(WmemInstance(std::vector<Rational>(9), Integer(3))).dump();
    std::ofstream(d + "swap.json") << to_json(fixed_mud_no_instance()).dump();
  }
  // Inputs produced once, outside the compared runs.
  cli("reduce 3col-to-uqm " + k3 + " " + d + "k3.json");
  cli("reduce uqm-to-wopt " + d + "k3.json " + d + "k3.wopt.json");
  cli("solve " + d + "k3.json --restarts 2 --seed 3 --out " + d + "k3.u.json");
  cli("reduce wmem-to-mud " + d + "zero9.json " + d + "zero9.mud.json");
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"reduce 3col-to-uqm " + k3 + " " + d + "o1.json", d + "o1.json"},
      {"reduce uqm-to-wopt " + d + "k3.json " + d + "o2.json", d + "o2.json"},
      {"reduce wopt-to-restricted " + d + "k3.wopt.json " + d + "o3.json", d + "o3.json"},
      {"reduce wmem-to-mud " + d + "zero9.json " + d + "o4.json", d + "o4.json"},
      {"solve " + d + "k3.json --seed 7 --restarts 3 --brute-diag --out " + d + "o5.json", d + "o5.json"},
      {"extract " + k3 + " " + d + "k3.u.json", ""},
      {"decide " + d + "zero9.mud.json --seed 7", ""},
      {"decide " + d + "swap.json --seed 7", ""},
      {"verify all --samples 500 --seed 7", ""},
      {"pipeline " + k3 + " --seed 7 --out " + d + "o6.json", d + "o6.json"},
      {"pipeline " + (g_data / "k4.col").string() + " --seed 7", ""},
  };
  for (const auto& [args, output] : commands) {
    const CliRun a = cli(args);
    const std::string out_a = output.empty() ? "" : slurp(output);
    const CliRun b = cli(args);
    const std::string out_b = output.empty() ? "" : slurp(output);
    const std::string name = args.substr(0, args.find(' ', args.find(' ') + 1));
    o.require(!a.out.empty(), name + ": empty report");
    o.require(a.code == b.code && a.out == b.out, name + ": reports differ");
    o.require(out_a == out_b, name + ": output documents differ");
  }
  o.note(std::to_string(commands.size()) + " commands");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <muhard executable> <data dir>\n";
    return 2;
  }
  g_exe = argv[1];
  g_data = argv[2];
  g_tmp = fs::temp_directory_path() / "muhard_acceptance";
  fs::remove_all(g_tmp);
  fs::create_directories(g_tmp);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gadget yes-case witnesses (K3, C5, P4, Petersen)", witness_yes_case},
      {"K4 objective floor 1/8416", no_case_floor},
      {"solver recovers planted K3 optimum", planted_optimum},
      {"angle lemma Monte-Carlo, 1e5 triples", angle_lemma},
      {"basis orthogonality and affine map roundtrip", basis_and_affine_map},
      {"ball points certified by Frank-Wolfe", ball_points},
      {"5-atom mixed-unitary recovery", five_atom_recovery},
      {"reduction contracts in exact arithmetic", reduction_contracts},
      {"yes/no preservation through UQM -> WOPT", yes_no_preservation},
      {"byte-identical reports with fixed seeds", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(g_tmp);
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

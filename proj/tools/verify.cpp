#include "verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "muhard/angle_lemma.hpp"
#include "muhard/basis.hpp"
#include "muhard/linalg.hpp"
#include "muhard/manifold.hpp"
#include "muhard/objective.hpp"
#include "muhard/reductions.hpp"

namespace muhard::cli {

namespace {

void record(SuiteResult& r, bool ok, const std::string& what, Json detail = nullptr) {
  ++r.checks;
  if (ok) return;
  ++r.violations;
  if (r.counterexample.is_null()) r.counterexample = Json{{"check", what}, {"detail", std::move(detail)}};
}

Json complex_list(std::initializer_list<std::complex<double>> zs) {
  Json out = Json::array();
  for (auto z : zs) out.push_back(Json{{"re", z.real()}, {"im", z.imag()}});
  return out;
}

SuiteResult lemma_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r;
  auto s = run_angle_lemma_monte_carlo(samples, seed);
  r.checks = s.samples;
  r.violations = s.violations;
  r.metrics["lemma.samples"] = s.samples;
  r.metrics["lemma.rejected_draws"] = s.rejected_draws;
  r.metrics["lemma.violations"] = s.violations;
  r.metrics["lemma.worst_margin"] = s.worst_margin;
  if (s.counterexample) {
    const auto& c = *s.counterexample;
    r.counterexample = Json{{"check", "angle lemma"},
                            {"detail", Json{{"values", complex_list({c.alpha, c.beta, c.gamma})}, {"epsilon", c.epsilon}}}};
  }
  return r;
}

using Gaussian = std::pair<long, long>;

SuiteResult basis_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst_roundtrip = 0, worst_trace = 0;
  for (std::size_t n : {2, 3, 4}) {
    TensorBasis basis(n);
    const std::size_t d = n * n, big_n = basis.size();
    std::vector<std::vector<Gaussian>> dense(big_n, std::vector<Gaussian>(d * d, {0, 0}));
    std::vector<std::vector<std::pair<std::size_t, Gaussian>>> sparse(big_n);
    for (std::size_t j = 0; j < big_n; ++j) {
      basis.for_each_entry(j, [&](std::size_t row, std::size_t col, long re, long im) {
        dense[j][row * d + col] = {re, im};
        sparse[j].push_back({row * d + col, {re, im}});
      });
    }
    std::size_t orth_fail = 0;
    for (std::size_t i = 0; i < big_n; ++i) {
      long nsq = 0;
      for (const auto& [pos, v] : sparse[i]) nsq += v.first * v.first + v.second * v.second;
      const long n2 = long(n * n);
      record(r, nsq >= 1 && nsq <= n2 * n2, "tensor basis norm bound", Json{{"n", n}, {"index", i + 1}});
      for (std::size_t j = i + 1; j < big_n; ++j) {
        long re = 0, im = 0;
        for (const auto& [pos, a] : sparse[i]) {
          const auto& b = dense[j][pos];
          re += a.first * b.first + a.second * b.second;
          im += a.first * b.second - a.second * b.first;
        }
        if (re != 0 || im != 0) {
          ++orth_fail;
          record(r, false, "tensor basis orthogonality", Json{{"n", n}, {"i", i + 1}, {"j", j + 1}});
        }
      }
      // Both partial traces of H_i vanish.
      for (TracedFactor side : {TracedFactor::Left, TracedFactor::Right}) {
        std::vector<Gaussian> pt(n * n, {0, 0});
        for (const auto& [pos, v] : sparse[i]) {
          const std::size_t row = pos / d, col = pos % d;
          const std::size_t i1 = row / n, i2 = row % n, j1 = col / n, j2 = col % n;
          if (side == TracedFactor::Left && i1 == j1) {
            pt[i2 * n + j2].first += v.first;
            pt[i2 * n + j2].second += v.second;
          }
          if (side == TracedFactor::Right && i2 == j2) {
            pt[i1 * n + j1].first += v.first;
            pt[i1 * n + j1].second += v.second;
          }
        }
        bool zero = std::all_of(pt.begin(), pt.end(), [](const Gaussian& g) { return g.first == 0 && g.second == 0; });
        record(r, zero, "tensor basis partial trace", Json{{"n", n}, {"index", i + 1}});
      }
    }
    r.checks += big_n * (big_n - 1) / 2 - orth_fail;
    r.metrics["basis.n" + std::to_string(n) + ".size"] = big_n;

    const FloatMatrix id = FloatMatrix::identity(n);
    for (std::size_t s = 0; s < samples; ++s) {
      FloatPoint p{n, std::vector<double>(big_n)};
      for (auto& v : p.x) v = coord(rng) / double(big_n);
      const FloatMatrix j = phi_map(p);
      const FloatPoint back = phi_inverse(j, n, 1e-8);
      double err = 0;
      for (std::size_t k = 0; k < big_n; ++k) err = std::max(err, std::abs(back.x[k] - p.x[k]));
      worst_roundtrip = std::max(worst_roundtrip, err);
      record(r, err <= 1e-12, "phi roundtrip", Json{{"n", n}, {"error", err}});
      for (TracedFactor side : {TracedFactor::Left, TracedFactor::Right}) {
        const double t = norm(partial_trace(j, side, n) - id, NormKind::Frobenius);
        worst_trace = std::max(worst_trace, t);
        record(r, t <= 1e-12, "phi partial trace", Json{{"n", n}, {"error", t}});
      }
    }
  }
  r.metrics["basis.roundtrip_max_error"] = worst_roundtrip;
  r.metrics["basis.partial_trace_max_error"] = worst_trace;
  return r;
}

FloatMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FloatMatrix a(rows, cols);
  for (auto& z : a.entries()) z = Complex(g(rng), g(rng));
  return a;
}

SuiteResult norms_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t n = 2 + s % 4;
    const FloatMatrix a = random_matrix(n, n, rng);
    const double spec = norm(a, NormKind::Spectral), frob = norm(a, NormKind::Frobenius),
                 tr = norm(a, NormKind::Trace);
    const double tol = 1e-12 * tr;
    worst_slack = std::min({worst_slack, frob - spec, tr - frob});
    record(r, spec <= frob + tol && frob <= tr + tol, "norm chain",
           Json{{"n", n}, {"spectral", spec}, {"frobenius", frob}, {"trace", tr}});
    double vec_norm = 0;
    for (const auto& z : vec(a)) vec_norm += std::norm(z);
    record(r, std::abs(std::sqrt(vec_norm) - frob) <= 1e-12 * std::max(1.0, frob), "vec isometry", Json{{"n", n}});

    const FloatMatrix u = from_eigen(haar_unitary(n, rng));
    const FloatMatrix j = choi_of_unitary(u);
    const FloatMatrix id = FloatMatrix::identity(n);
    const double e1 = norm(partial_trace(j, TracedFactor::Left, n) - id, NormKind::Frobenius);
    const double e2 = norm(partial_trace(j, TracedFactor::Right, n) - id, NormKind::Frobenius);
    record(r, e1 <= 1e-10 && e2 <= 1e-10, "unitary Choi partial traces", Json{{"n", n}, {"left", e1}, {"right", e2}});
  }
  r.metrics["norms.samples"] = samples;
  r.metrics["norms.min_chain_slack"] = samples ? worst_slack : 0.0;
  return r;
}

SuiteResult reductions_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, Graph>> graphs = {
      {"K3", complete_graph(3)}, {"C5", cycle_graph(5)}, {"P4", path_graph(4)}, {"Petersen", petersen_graph()}};
  for (const auto& [name, g] : graphs) {
    const UqmInstance inst = three_col_to_uqm(g);
    bool values_ok = true;
    for (const auto& a : inst.operators())
      for (const auto& e : a.entries())
        if (!(e.is_zero() || e == RationalComplex(1) || e == RationalComplex(make_rational(1, 2)))) values_ok = false;
    record(r, values_ok, "3col entries in {0, 1/2, 1}", Json{{"graph", name}});

    auto coloring = find_three_coloring(g);
    if (!coloring) continue;
    const auto w = coloring_to_unitary(g, *coloring);
    const QuadraticSurd exact = DiagonalObjective(inst).evaluate(w.exponents);
    record(r, exact.sign() == 0, "witness objective is exactly zero", Json{{"graph", name}});
    const double fl = uqm_objective(inst, w.realize());
    record(r, fl <= 1e-12, "witness objective in floating point", Json{{"graph", name}, {"value", fl}});
    const auto ex = extract_coloring(g, w.realize());
    record(r, ex.ok(), "witness extraction", Json{{"graph", name}, {"reason", ex.failure_reason}});
  }

  // Σ|<A_j,U>|² = <P, vec(U)vec(U)*> on random unitaries.
  const UqmInstance k3 = three_col_to_uqm(complete_graph(3));
  const auto p = uqm_gram_operator(k3);
  const std::size_t dd = k3.dim() * k3.dim();
  double worst = 0;
  for (std::size_t s = 0; s < std::min<std::size_t>(samples, 200); ++s) {
    const FloatMatrix u = from_eigen(haar_unitary(k3.dim(), rng));
    const auto v = vec(u);
    Complex quad = 0;
    for (const auto& [key, val] : p) quad += std::conj(v[key / dd]) * val.to_complex() * v[key % dd];
    const double diff = std::abs(quad.real() - uqm_objective(k3, u));
    worst = std::max(worst, diff);
    record(r, diff <= 1e-10, "objective identity", Json{{"difference", diff}});
  }
  r.metrics["reductions.objective_identity_max_error"] = worst;

  // n = 2, k = 1, A = E12.
  const UqmInstance tiny(2, {ExactMatrix::unit(2, 0, 1)}, 0, 1);
  const WoptReduction red = uqm_to_wopt_detailed(tiny);
  bool w_ok = red.w.size() == 9 && red.w[8] == -1;
  for (std::size_t j = 0; j + 1 < red.w.size(); ++j) w_ok = w_ok && sgn(red.w[j]) == 0;
  record(r, w_ok, "uqm_to_wopt w vector");
  record(r, squared_norm(red.instance.u()) <= 1, "uqm_to_wopt norm of u");
  record(r, abs(red.instance.beta() - red.gamma) <= Rational(1) / Rational(red.beta_scale), "uqm_to_wopt beta grid");
  record(r, red.trace_p <= 1, "uqm_to_wopt trace bound");

  // WMEM → MUD common denominator.
  std::uniform_int_distribution<long> num(-50, 50);
  for (std::size_t s = 0; s < std::min<std::size_t>(samples, 20); ++s) {
    std::vector<Rational> x(9);
    for (auto& v : x) v = make_rational(num(rng), 97);
    const auto out = wmem_to_mud(WmemInstance(x, 3));
    bool ok = out.common_denominator == 2 * 3 * 9;
    for (const auto& z : out.z) ok = ok && (out.common_denominator % z.get_den()) == 0;
    record(r, ok, "wmem_to_mud common denominator");
  }

  record(r, 12.0 / std::sqrt(526.0) < std::numbers::pi / 6, "bucket constant 12/sqrt(526) < pi/6");
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::size_t samples, std::uint64_t seed) {
  if (name == "lemma") return lemma_suite(samples, seed);
  if (name == "basis") return basis_suite(std::min<std::size_t>(samples, 100), seed);
  if (name == "norms") return norms_suite(samples, seed);
  if (name == "reductions") return reductions_suite(samples, seed);
  throw std::invalid_argument("unknown verification suite '" + name + "'");
}

}  // namespace muhard::cli

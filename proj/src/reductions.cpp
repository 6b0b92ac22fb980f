#include "muhard/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "muhard/basis.hpp"
#include "muhard/error.hpp"
#include "muhard/linalg.hpp"

namespace muhard {

namespace {

Integer to_integer(std::size_t v) { return Integer(static_cast<unsigned long>(v)); }

Integer from_int128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

}  // namespace

UqmInstance three_col_to_uqm(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  const std::size_t m = graph.edge_count();
  const std::size_t d = n + m;
  std::vector<ExactMatrix> ops;
  ops.reserve(d * d - n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j) ops.push_back(ExactMatrix::unit(d, i, j));
    }
  }
  const RationalComplex half(make_rational(1, 2));
  for (std::size_t j = 0; j < m; ++j) {
    const auto& e = graph.edges()[j];
    ExactMatrix g(d, d);
    g(e.a - 1, e.a - 1) = half;
    g(e.b - 1, e.b - 1) = half;
    g(n + j, n + j) = half;
    ops.push_back(std::move(g));
  }
  return UqmInstance(d, std::move(ops), Rational(0), 526 * to_integer(n) * to_integer(n));
}

Rational uqm_gap_threshold(std::size_t vertex_count) {
  return make_rational(1, 526 * to_integer(vertex_count) * to_integer(vertex_count));
}

FloatMatrix DiagonalUnitaryWitness::realize() const {
  static const Complex roots[3] = {Complex(1.0, 0.0), Complex(-0.5, std::sqrt(3.0) / 2),
                                   Complex(-0.5, -std::sqrt(3.0) / 2)};
  FloatMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) u(i, i) = roots[exponents.at(i) % 3];
  return u;
}

DiagonalUnitaryWitness coloring_to_unitary(const Graph& graph, const Coloring& coloring) {
  if (auto bad = find_conflict(graph, coloring)) {
    throw PreconditionError("coloring is improper at edge {" + std::to_string(bad->a) + "," +
                            std::to_string(bad->b) + "}");
  }
  const std::size_t n = graph.vertex_count();
  DiagonalUnitaryWitness w;
  w.n = n + graph.edge_count();
  w.exponents = coloring.colors;
  for (const auto& e : graph.edges()) {
    w.exponents.push_back(static_cast<std::uint8_t>(3 - coloring.of(e.a) - coloring.of(e.b)));
  }
  return w;
}

DiagonalObjective::DiagonalObjective(const UqmInstance& inst) : dim_(inst.dim()) {
  constexpr long kLimit = 1L << 24;
  for (const auto& a : inst.operators()) {
    std::vector<std::pair<std::size_t, RationalComplex>> diag;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!a(i, i).is_zero()) diag.emplace_back(i, a(i, i).conj());
    }
    if (diag.empty()) continue;
    Integer den = 1;
    for (const auto& [i, v] : diag) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.z().get_mpz_t());
    Operator op;
    bool small = den.fits_slong_p() && diag.size() < (1u << 12);
    for (const auto& [i, v] : diag) {
      Integer re = v.x() * (den / v.z());
      Integer im = v.y() * (den / v.z());
      if (abs(re) >= kLimit || abs(im) >= kLimit) small = false;
      if (small) op.terms.push_back({i, re.get_si(), im.get_si()});
    }
    if (small) {
      op.den_sq = den * den;
      small_.push_back(std::move(op));
    } else {
      generic_.push_back({std::move(diag)});
    }
  }
}

QuadraticSurd DiagonalObjective::evaluate(std::span<const std::uint8_t> exponents) const {
  if (exponents.size() != dim_) throw DimensionError("diagonal exponent vector has the wrong length");
  // Integer accumulation per distinct denominator; gadget instances have one.
  std::vector<std::pair<const Integer*, std::pair<__int128, __int128>>> groups;
  for (const auto& op : small_) {
    __int128 re[3] = {0, 0, 0}, im[3] = {0, 0, 0};
    for (const auto& t : op.terms) {
      const int e = exponents[t.index] % 3;
      re[e] += t.re;
      im[e] += t.im;
    }
    // |a + bω + cω²|² = p + q√3
    auto dot_re = [&](int x, int y) { return re[x] * re[y] + im[x] * im[y]; };
    auto dot_im = [&](int x, int y) { return re[x] * im[y] - im[x] * re[y]; };
    __int128 p = dot_re(0, 0) + dot_re(1, 1) + dot_re(2, 2) - dot_re(0, 1) - dot_re(0, 2) - dot_re(1, 2);
    __int128 q = -dot_im(0, 1) + dot_im(0, 2) - dot_im(1, 2);
    if (p == 0 && q == 0) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return *g.first == op.den_sq; });
    if (it == groups.end()) {
      groups.push_back({&op.den_sq, {p, q}});
    } else {
      it->second.first += p;
      it->second.second += q;
    }
  }
  QuadraticSurd total;
  for (const auto& [den, pq] : groups) {
    total += QuadraticSurd(make_rational(from_int128(pq.first), *den), make_rational(from_int128(pq.second), *den));
  }
  for (const auto& op : generic_) {
    RationalComplex c[3];
    for (const auto& [i, v] : op.terms) c[exponents[i] % 3] += v;
    total += cube_root_combination_norm_sq(c[0], c[1], c[2]);
  }
  return total;
}

std::optional<int> angle_bucket(double theta) {
  constexpr double pi = std::numbers::pi;
  if (theta >= 11 * pi / 6 || (theta >= 0 && theta <= pi / 6)) return 0;
  if (theta >= pi / 2 && theta <= 5 * pi / 6) return 1;
  if (theta >= 7 * pi / 6 && theta <= 3 * pi / 2) return 2;
  return std::nullopt;
}

ExtractionResult extract_coloring(const Graph& graph, const FloatMatrix& u) {
  const std::size_t n = graph.vertex_count();
  const std::size_t d = n + graph.edge_count();
  if (u.rows() != d || u.cols() != d) {
    throw DimensionError("unitary is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                         ", graph needs " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (!is_unitary(u, 1e-8)) throw PreconditionError("extract_coloring: input is not unitary within 1e-8");

  ExtractionResult result;
  auto modulus_ok = [&](std::size_t v) {
    const double mod = std::abs(u(v - 1, v - 1));
    if (mod >= 0.5) return true;
    result.failure_reason = "diagonal entry U(" + std::to_string(v) + "," + std::to_string(v) + ") has modulus " +
                            std::to_string(mod) + " < 1/2";
    return false;
  };

  Coloring coloring{std::vector<std::uint8_t>(n, 0)};
  for (const auto& component : graph.components()) {
    const std::size_t root = component.front();
    if (component.size() > 1 && !modulus_ok(root)) return result;
    const double root_arg = std::arg(u(root - 1, root - 1));
    for (std::size_t idx = 1; idx < component.size(); ++idx) {
      const std::size_t b = component[idx];
      if (!modulus_ok(b)) return result;
      double theta = std::fmod(root_arg - std::arg(u(b - 1, b - 1)), 2 * std::numbers::pi);
      if (theta < 0) theta += 2 * std::numbers::pi;
      if (theta >= 2 * std::numbers::pi) theta = 0;
      auto bucket = angle_bucket(theta);
      if (!bucket) {
        result.failure_reason = "theta(" + std::to_string(root) + "," + std::to_string(b) +
                                ") = " + std::to_string(theta) + " lies in none of S0, S1, S2";
        return result;
      }
      coloring.colors[b - 1] = static_cast<std::uint8_t>(*bucket);
    }
  }
  if (auto bad = find_conflict(graph, coloring)) {
    result.failure_reason = "extracted coloring is improper at edge {" + std::to_string(bad->a) + "," +
                            std::to_string(bad->b) + "}";
    return result;
  }
  result.coloring = std::move(coloring);
  return result;
}

std::vector<std::pair<std::size_t, RationalComplex>> uqm_gram_operator(const UqmInstance& inst) {
  const std::size_t d = inst.dim();
  std::map<std::size_t, RationalComplex> p;
  for (const auto& a : inst.operators()) {
    std::vector<std::pair<std::size_t, const RationalComplex*>> nz;
    for (std::size_t i = 0; i < d * d; ++i) {
      if (!a.entries()[i].is_zero()) nz.emplace_back(i, &a.entries()[i]);
    }
    for (const auto& [r, vr] : nz) {
      for (const auto& [c, vc] : nz) p[r * d * d + c] += *vr * vc->conj();
    }
  }
  std::vector<std::pair<std::size_t, RationalComplex>> out;
  for (auto& [key, value] : p) {
    if (!value.is_zero()) out.emplace_back(key, std::move(value));
  }
  return out;
}

WoptReduction uqm_to_wopt_detailed(const UqmInstance& inst) {
  const std::size_t d = inst.dim();
  const std::size_t k_ops = inst.operators().size();
  if (k_ops == 0) throw PreconditionError("uqm_to_wopt needs at least one operator");
  if (d < 2) throw PreconditionError("uqm_to_wopt needs operator dimension n >= 2");

  const GellMannBasis& g = *GellMannBasis::cached(d);
  const std::size_t ng = g.size();
  const std::size_t big_n = ng * ng;
  const std::size_t dd = d * d;

  std::vector<Rational> w(big_n);
  Rational trace_p = 0;
  for (const auto& [key, value] : uqm_gram_operator(inst)) {
    const std::size_t r = key / dd, c = key % dd;
    if (r == c) trace_p += value.real();
    const std::size_t i1 = r / d, i2 = r % d, j1 = c / d, j2 = c % d;
    const Rational pr = value.real(), pi = value.imag();
    for (const auto& oa : g.occurrences(i1, j1)) {
      for (const auto& ob : g.occurrences(i2, j2)) {
        const long hr = oa.re * ob.re - oa.im * ob.im;
        const long hi = oa.re * ob.im + oa.im * ob.re;
        // Re(conj(P_rc)·H_rc); the imaginary parts cancel since P and H are Hermitian.
        Rational& acc = w[oa.index * ng + ob.index];
        if (hr != 0 && sgn(pr) != 0) acc += pr * hr;
        if (hi != 0 && sgn(pi) != 0) acc += pi * hi;
      }
    }
  }

  const Integer k = to_integer(k_ops), n = to_integer(d), nn = to_integer(big_n);
  const Integer& m = inst.precision_m();
  const Integer n2 = nn * nn, n3 = n2 * nn;

  WoptReduction out{WoptInstance({Rational(0)}, 0, 1), {}, {}, 0, trace_p, 8 * k * m * n * n3, 8 * k * m * n2,
                    8 * k * m * n * n * n * n * n3};
  const Rational kn2(k * n2);
  out.v.resize(big_n);
  std::vector<Rational> u(big_n);
  for (std::size_t j = 0; j < big_n; ++j) {
    if (sgn(w[j]) == 0) continue;
    out.v[j] = w[j] / kn2;
    u[j] = make_rational(trunc(out.u_scale * out.v[j]), out.u_scale);
  }
  out.gamma = inst.alpha() - trace_p / Rational(k * n * n2) + Rational(1) / Rational(2 * k * m * n2);
  Rational beta = make_rational(trunc(out.beta_scale * out.gamma), out.beta_scale);
  out.w = std::move(w);
  out.instance = WoptInstance(std::move(u), std::move(beta), out.r);
  return out;
}

WoptInstance uqm_to_wopt(const UqmInstance& inst) { return uqm_to_wopt_detailed(inst).instance; }

namespace {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  root = make_rational(sqrt(q.get_num()), sqrt(q.get_den()));
  return true;
}

}  // namespace

RestrictedWopt wopt_to_restricted(const WoptInstance& inst, const std::optional<Polynomial>& p) {
  const auto& u = inst.u();
  const std::size_t big_n = u.size();
  const Integer& m = inst.precision_m();
  const Rational norm_sq = squared_norm(u);
  if (sgn(norm_sq) == 0) throw PreconditionError("wopt_to_restricted: u is the zero vector");

  const Rational window_mid = Rational(3) / Rational(8 * m);
  Rational norm;
  if (rational_sqrt(norm_sq, norm)) {
    std::vector<Rational> v(big_n);
    for (std::size_t j = 0; j < big_n; ++j) v[j] = u[j] / norm;
    return {WoptInstance(std::move(v), inst.beta() / norm + window_mid, 4 * m), true};
  }

  const Integer nn = to_integer(big_n);
  const Integer p_of_n = p ? (*p)(nn) : nn * nn;
  const Rational tol = Rational(1) / Rational(4 * m * (p_of_n + 1));
  const Rational delta_tol = Rational(1) / Rational(8 * m);

  // Pole on the axis of the largest |u_k|, so |u_k| ≥ ‖u‖/√N.
  std::size_t k = 0;
  for (std::size_t j = 1; j < big_n; ++j)
    if (abs(u[j]) > abs(u[k])) k = j;
  const Rational abs_uk = abs(u[k]);

  // L ≤ ‖u‖ ≤ L + 1/S with L = isqrt(‖u‖²·S²)/S. The stereographic coordinates
  // t_j = u_j/(L + |u_k|) are within √N/(S‖u‖) of the exact ones, and the
  // inverse projection is 2-Lipschitz.
  Integer scale = 1;
  Rational lower;
  for (;;) {
    scale <<= 8;
    const Integer s_sq = scale * scale;
    const Rational scaled = norm_sq * Rational(s_sq);
    lower = make_rational(sqrt(Integer(scaled.get_num() / scaled.get_den())), scale);
    if (sgn(lower) <= 0) continue;
    const Rational vec_err_sq = Rational(4 * nn) / (Rational(s_sq) * lower * lower);
    const Rational delta_err = abs(inst.beta()) / (Rational(scale) * lower * lower);
    if (vec_err_sq <= tol * tol && delta_err <= delta_tol) break;
  }

  const Rational denom = lower + abs_uk;
  std::vector<Rational> t(big_n);
  Rational t_sq = 0;
  for (std::size_t j = 0; j < big_n; ++j) {
    if (j == k || sgn(u[j]) == 0) continue;
    t[j] = u[j] / denom;
    t_sq += t[j] * t[j];
  }
  const Rational inv = Rational(1) / (1 + t_sq);
  std::vector<Rational> v(big_n);
  for (std::size_t j = 0; j < big_n; ++j) {
    if (j == k) {
      v[j] = (1 - t_sq) * inv;
      if (sgn(u[k]) < 0) v[j] = -v[j];
    } else if (sgn(t[j]) != 0) {
      v[j] = 2 * t[j] * inv;
    }
  }
  return {WoptInstance(std::move(v), inst.beta() / lower + window_mid, 4 * m), false};
}

MudInstance fixed_mud_yes_instance() { return MudInstance(2, depolarizing_choi(2), 3); }

MudInstance fixed_mud_no_instance() {
  ExactMatrix swap(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1;
  return MudInstance(2, std::move(swap), 3);
}

MudReduction wmem_to_mud(const WmemInstance& inst) {
  const auto& x = inst.x();
  const Integer& m = inst.precision_m();
  auto n = channel_dimension_for(x.size());
  if (!n) {
    const bool inside = squared_norm(x) <= 1;
    return {inside ? fixed_mud_yes_instance() : fixed_mud_no_instance(), inside, {}, Integer(0)};
  }
  const Integer den = 2 * m * to_integer(x.size());
  std::vector<Rational> z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(x[j]) != 0) z[j] = make_rational(trunc(den * x[j]), den);
  }
  MudInstance out(*n, phi_map(ExactPoint{*n, z}), 2 * m);
  return {std::move(out), std::nullopt, std::move(z), den};
}

}  // namespace muhard

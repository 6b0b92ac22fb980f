#include "muhard/angle_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "muhard/error.hpp"

namespace muhard {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kTwoPi = 2 * std::numbers::pi;

double reduce_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0;
  return t;
}

}  // namespace

AngleLemmaReport check_angle_lemma(std::complex<double> alpha, std::complex<double> beta,
                                   std::complex<double> gamma, double epsilon) {
  AngleLemmaReport r;
  if (!(epsilon >= 0 && epsilon <= 1.0 / 6)) {
    r.premise_failure = "epsilon outside [0, 1/6]";
    return r;
  }
  const std::complex<double> z[3] = {alpha, beta, gamma};
  for (int i = 0; i < 3; ++i) {
    const double mod = std::abs(z[i]);
    if (mod < 1 - epsilon - kSlack || mod > 1 + kSlack) {
      r.premise_failure = "modulus " + std::to_string(mod) + " of argument " + std::to_string(i) +
                          " outside [1-eps, 1]";
      return r;
    }
  }
  if (std::abs(alpha + beta + gamma) > epsilon + kSlack) {
    r.premise_failure = "|alpha+beta+gamma| exceeds epsilon";
    return r;
  }
  r.premises_hold = true;
  r.verdict = true;
  for (int i = 0; i < 3; ++i) {
    r.theta[i] = reduce_angle(std::arg(z[i]) - std::arg(z[(i + 1) % 3]));
    const double dist = std::min(std::abs(r.theta[i] - kTwoPi / 3), std::abs(r.theta[i] - 2 * kTwoPi / 3));
    r.margin[i] = 6 * epsilon - dist;
    r.passes[i] = r.margin[i] >= -kSlack;
    r.verdict = r.verdict && r.passes[i];
  }
  return r;
}

LemmaMonteCarloSummary run_angle_lemma_monte_carlo(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LemmaMonteCarloSummary s;
  s.worst_margin = std::numeric_limits<double>::infinity();
  while (s.samples < samples) {
    const double eps = unit(rng) / 6;
    const double base = unit(rng) * kTwoPi;
    const double orient = unit(rng) < 0.5 ? 1.0 : -1.0;
    std::complex<double> z[3];
    for (int i = 0; i < 3; ++i) {
      const double mod = 1 - eps * unit(rng);
      const double phase = base + orient * i * kTwoPi / 3 + (i ? (2 * unit(rng) - 1) * 2 * eps : 0.0);
      z[i] = std::polar(mod, phase);
    }
    if (std::abs(z[0] + z[1] + z[2]) > eps) {
      ++s.rejected_draws;
      continue;
    }
    ++s.samples;
    auto r = check_angle_lemma(z[0], z[1], z[2], eps);
    if (!r.premises_hold) throw std::logic_error("sampler produced a premise violation: " + r.premise_failure);
    s.worst_margin = std::min({s.worst_margin, r.margin[0], r.margin[1], r.margin[2]});
    if (!r.verdict) {
      ++s.violations;
      if (!s.counterexample) s.counterexample = LemmaSample{z[0], z[1], z[2], eps};
    }
  }
  if (s.samples == 0) s.worst_margin = 0;
  return s;
}

}  // namespace muhard

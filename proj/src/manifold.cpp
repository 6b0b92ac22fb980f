#include "muhard/manifold.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "muhard/diagonal.hpp"
#include "muhard/error.hpp"

namespace muhard {

void SolverConfig::validate() const {
  if (restarts < 1) throw PreconditionError("solver needs at least one restart");
  if (max_iterations < 1) throw PreconditionError("solver needs max_iterations >= 1");
  if (!(tolerance > 0)) throw PreconditionError("solver tolerance must be positive");
  if (!(step_size > 0)) throw PreconditionError("solver step size must be positive");
  if (!(step_decay > 0 && step_decay < 1)) throw PreconditionError("step decay must lie in (0, 1)");
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e3;
constexpr double kGradientFloor = 1e-10;

struct RestartOutcome {
  EigenMatrix u;
  double value = 0;
  std::size_t evaluations = 0;
  std::size_t accepted = 0;
};

RestartOutcome descend(const QuadraticObjective& f, const SolverConfig& cfg, EigenMatrix u,
                       const EvaluationObserver& observer) {
  const Eigen::Index n = u.rows();
  const EigenMatrix id = EigenMatrix::Identity(n, n);
  RestartOutcome out;
  EigenMatrix g;
  double value = f.value_and_gradient(u, g);
  ++out.evaluations;
  if (observer) observer(u, value);
  double step = cfg.step_size;

  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    EigenMatrix m = u.adjoint() * g;
    EigenMatrix grad = u * ((m - m.adjoint()) * 0.5);
    if (grad.norm() < kGradientFloor) break;

    bool accepted = false;
    EigenMatrix trial;
    double trial_value = 0;
    while (step >= kMinStep) {
      trial = orthonormalize(u - step * grad);
      trial_value = f.value(trial);
      ++out.evaluations;
      if (observer) observer(trial, trial_value);
      if (trial_value < value) {
        accepted = true;
        break;
      }
      step *= cfg.step_decay;
    }
    if (!accepted) break;

    const double improvement = value - trial_value;
    u = std::move(trial);
    if ((u.adjoint() * u - id).norm() > 1e-12) u = orthonormalize(u);
    value = f.value_and_gradient(u, g);
    ++out.evaluations;
    ++out.accepted;
    step = std::min(step / cfg.step_decay, kMaxStep);
    if (improvement < cfg.tolerance) break;
  }
  out.u = std::move(u);
  out.value = value;
  return out;
}

}  // namespace

ManifoldResult minimize_unitary(const QuadraticObjective& f, const SolverConfig& cfg,
                                const std::vector<EigenMatrix>& warm_starts, const EvaluationObserver& observer) {
  cfg.validate();
  const std::size_t n = f.dim();
  for (const auto& w : warm_starts) {
    if (w.rows() != Eigen::Index(n) || w.cols() != Eigen::Index(n)) throw DimensionError("warm start has wrong size");
  }
  const std::size_t runs = std::max(cfg.restarts, warm_starts.size());
  std::vector<RestartOutcome> outcomes(runs);

  auto run = [&](std::size_t i) {
    EigenMatrix start;
    if (i < warm_starts.size()) {
      start = orthonormalize(warm_starts[i]);
    } else {
      auto rng = restart_rng(cfg.seed, i);
      start = haar_unitary(n, rng);
    }
    outcomes[i] = descend(f, cfg, std::move(start), observer);
  };

  const std::size_t workers = std::min(std::max<std::size_t>(cfg.threads, 1), runs);
  if (workers == 1) {
    for (std::size_t i = 0; i < runs; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < runs; i = next++) {
          try {
            run(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  ManifoldResult result;
  for (std::size_t i = 0; i < runs; ++i) {
    result.restart_values.push_back(outcomes[i].value);
    result.evaluations += outcomes[i].evaluations;
    result.accepted_steps += outcomes[i].accepted;
    if (i == 0 || outcomes[i].value < outcomes[result.best_restart].value) result.best_restart = i;
  }
  result.u = std::move(outcomes[result.best_restart].u);
  result.value = outcomes[result.best_restart].value;
  return result;
}

ManifoldResult minimize_uqm_manifold(const UqmInstance& inst, const SolverConfig& cfg,
                                     const EvaluationObserver& observer) {
  cfg.validate();
  std::vector<EigenMatrix> warm;
  if (cfg.diagonal_warm_start) {
    DiagonalSearchResult diag = diagonal_candidate_count(inst.dim()) <= cfg.brute_force_budget
                                    ? minimize_uqm_diagonal_bruteforce(inst, cfg.brute_force_budget)
                                    : diagonal_local_search(inst, cfg.seed);
    warm.push_back(to_eigen(diag.witness.realize()));
  }
  return minimize_unitary(QuadraticObjective::from_instance(inst), cfg, warm, observer);
}

}  // namespace muhard

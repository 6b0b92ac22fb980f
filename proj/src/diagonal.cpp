#include "muhard/diagonal.hpp"

#include <limits>
#include <random>

#include "muhard/error.hpp"

namespace muhard {

std::uint64_t diagonal_candidate_count(std::size_t d) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (c > std::numeric_limits<std::uint64_t>::max() / 3) return std::numeric_limits<std::uint64_t>::max();
    c *= 3;
  }
  return c;
}

DiagonalSearchResult minimize_uqm_diagonal_bruteforce(const UqmInstance& inst, std::uint64_t budget,
                                                      const DiagonalVisitor& visitor) {
  const std::size_t d = inst.dim();
  const std::uint64_t total = diagonal_candidate_count(d);
  if (total > budget) {
    throw BudgetExceeded("diagonal brute force needs 3^" + std::to_string(d) + " candidates, budget is " +
                         std::to_string(budget));
  }
  DiagonalObjective objective(inst);
  std::vector<std::uint8_t> e(d, 0);
  DiagonalSearchResult best;
  best.witness = {d, e};
  best.value = objective.evaluate(e);
  if (visitor) visitor(e, best.value);
  best.candidates = 1;
  for (std::uint64_t step = 1; step < total; ++step) {
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++e[pos] < 3) break;
      e[pos] = 0;
    }
    QuadraticSurd v = objective.evaluate(e);
    if (visitor) visitor(e, v);
    ++best.candidates;
    if (v < best.value) {
      best.value = std::move(v);
      best.witness.exponents = e;
    }
  }
  return best;
}

DiagonalSearchResult diagonal_local_search(const UqmInstance& inst, std::uint64_t seed, std::size_t max_steps) {
  const std::size_t d = inst.dim();
  DiagonalObjective objective(inst);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> color(0, 2);
  std::uniform_int_distribution<std::size_t> index(0, d - 1);

  std::vector<std::uint8_t> e(d);
  for (auto& x : e) x = static_cast<std::uint8_t>(color(rng));
  QuadraticSurd current = objective.evaluate(e);
  DiagonalSearchResult best{{d, e}, current, 1};

  for (std::size_t step = 0; step < max_steps && best.value.sign() > 0; ++step) {
    std::size_t best_i = d;
    std::uint8_t best_c = 0;
    QuadraticSurd best_move = current;
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint8_t old = e[i];
      for (std::uint8_t c = 0; c < 3; ++c) {
        if (c == old) continue;
        e[i] = c;
        QuadraticSurd v = objective.evaluate(e);
        ++best.candidates;
        if (v < best_move) {
          best_move = std::move(v);
          best_i = i;
          best_c = c;
        }
      }
      e[i] = old;
    }
    if (best_i < d) {
      e[best_i] = best_c;
      current = std::move(best_move);
    } else {
      e[index(rng)] = static_cast<std::uint8_t>(color(rng));
      current = objective.evaluate(e);
      ++best.candidates;
    }
    if (current < best.value) {
      best.value = current;
      best.witness.exponents = e;
    }
  }
  return best;
}

}  // namespace muhard

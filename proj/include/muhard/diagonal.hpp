#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "muhard/reductions.hpp"

namespace muhard {

struct DiagonalSearchResult {
  DiagonalUnitaryWitness witness;
  QuadraticSurd value;
  std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kDefaultDiagonalBudget = 531441;  // 3^12

/// 3^d, saturating at UINT64_MAX.
std::uint64_t diagonal_candidate_count(std::size_t d);

using DiagonalVisitor = std::function<void(std::span<const std::uint8_t> exponents, const QuadraticSurd& value)>;

/// Exact minimum over all diag(ω^e), e ∈ {0,1,2}^d, enumerated with the
/// last index fastest; ties keep the first candidate. Throws BudgetExceeded
/// when 3^d > budget.
DiagonalSearchResult minimize_uqm_diagonal_bruteforce(const UqmInstance& inst,
                                                      std::uint64_t budget = kDefaultDiagonalBudget,
                                                      const DiagonalVisitor& visitor = nullptr);

/// Min-conflicts search over ω-diagonals: best single-coordinate move per
/// step, random kicks on plateaus. Stops at value 0 or after max_steps.
DiagonalSearchResult diagonal_local_search(const UqmInstance& inst, std::uint64_t seed,
                                           std::size_t max_steps = 20000);

}  // namespace muhard

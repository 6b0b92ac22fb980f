#pragma once

#include <cstdint>
#include <string>

#include "muhard/serialize.hpp"

namespace muhard::cli {

struct SuiteResult {
  std::size_t checks = 0;
  std::size_t violations = 0;
  Json metrics = Json::object();
  /// First failing case, serialized.
  Json counterexample = nullptr;
};

/// Suites: lemma, basis, norms, reductions. Throws std::invalid_argument on
/// an unknown name.
SuiteResult run_suite(const std::string& name, std::size_t samples, std::uint64_t seed);

}  // namespace muhard::cli

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "muhard/serialize.hpp"

namespace muhard {

/// p(L) = Σ c_i L^i with integer coefficients, lowest degree first.
struct Polynomial {
  std::vector<Integer> coefficients;

  Integer operator()(const Integer& x) const;
  std::string to_string() const;

  static Polynomial constant(long c) { return Polynomial{{Integer(c)}}; }
  /// Comma-separated coefficients, e.g. "0,0,1" for L².
  static Polynomial parse(std::string_view text);
};

struct PBoundedReport {
  Integer max_abs_x;
  Integer max_abs_y;
  Integer max_abs_z;
  /// Canonical JSON byte count plus m for every unary precision parameter.
  Integer length;
  Integer p_of_length;
  bool bounded = false;
};

Integer instance_length(const AnyInstance& inst);
PBoundedReport audit_p_bounded(const AnyInstance& inst, const Polynomial& p);

Json to_json(const PBoundedReport& report);

}  // namespace muhard

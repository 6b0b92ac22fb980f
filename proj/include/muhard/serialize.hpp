#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "muhard/instances.hpp"

namespace muhard {

using Json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "mu-hardness/1";

// Scalars. Complex numbers are {"x","y","z"} with decimal integer strings;
// real-only fields omit "y". Decoders report the JSON path of a bad field.
Json encode_complex(const RationalComplex& value);
RationalComplex decode_complex(const Json& j, const std::string& path);
Json encode_real(const Rational& value);
Rational decode_real(const Json& j, const std::string& path);
/// {"unary_m": m}; m is written as a string once it leaves int64 range.
Json encode_precision(const Integer& m);
Integer decode_precision(const Json& j, const std::string& path);

/// Sparse {"rows","cols","nonzeros":[{"i","j","v"}]} in row-major order.
Json encode_matrix(const ExactMatrix& m);
ExactMatrix decode_matrix(const Json& j, const std::string& path);

Json to_json(const UqmInstance& inst);
Json to_json(const WoptInstance& inst);
Json to_json(const WmemInstance& inst);
Json to_json(const MudInstance& inst);

using AnyInstance = std::variant<UqmInstance, WoptInstance, WmemInstance, MudInstance>;

/// Checks the schema tag and dispatches on "type". Throws SchemaError.
AnyInstance instance_from_json(const Json& j);

template <typename T>
T instance_as(const Json& j) {
  auto any = instance_from_json(j);
  if (auto* p = std::get_if<T>(&any)) return std::move(*p);
  throw SchemaError("document type '" + j.value("type", std::string("?")) + "' is not the expected instance type");
}

/// Unitary documents: "encoding" is "float" ({"re","im"} doubles) or
/// "rational" (triples).
Json unitary_to_json(const FloatMatrix& u);
Json unitary_to_json(const ExactMatrix& u);
FloatMatrix unitary_from_json(const Json& j);

/// Parses text as JSON; syntax errors become SchemaError.
Json parse_json(std::string_view text);

/// Compact, key-sorted dump; the canonical byte form used for audits.
std::string canonical_dump(const Json& j);

}  // namespace muhard

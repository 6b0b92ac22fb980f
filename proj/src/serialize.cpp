#include "muhard/serialize.hpp"

#include <limits>

#include "muhard/error.hpp"

namespace muhard {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing field");
  return *it;
}

Integer decode_int_string(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  throw SchemaError(path + ": expected a decimal integer string");
}

std::size_t decode_size(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SchemaError(path + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Json header(const char* type) { return Json{{"schema", kSchemaVersion}, {"type", type}}; }

Json encode_vector(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(encode_real(x));
  return out;
}

std::vector<Rational> decode_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_real(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Constructor failures inside a document are schema problems of that document.
template <typename F>
auto validated(const std::string& type, F&& build) {
  try {
    return build();
  } catch (const PreconditionError& e) {
    throw SchemaError(type + " instance rejected: " + e.what());
  } catch (const DimensionError& e) {
    throw SchemaError(type + " instance rejected: " + e.what());
  }
}

}  // namespace

Json encode_complex(const RationalComplex& value) {
  return Json{{"x", value.x().get_str()}, {"y", value.y().get_str()}, {"z", value.z().get_str()}};
}

RationalComplex decode_complex(const Json& j, const std::string& path) {
  Integer x = decode_int_string(field(j, "x", path), path + ".x");
  Integer y = j.contains("y") ? decode_int_string(j["y"], path + ".y") : Integer(0);
  Integer z = decode_int_string(field(j, "z", path), path + ".z");
  if (sgn(z) <= 0) throw SchemaError(path + ".z: denominator must be positive");
  return RationalComplex(std::move(x), std::move(y), std::move(z));
}

Json encode_real(const Rational& value) {
  return Json{{"x", value.get_num().get_str()}, {"z", value.get_den().get_str()}};
}

Rational decode_real(const Json& j, const std::string& path) {
  RationalComplex c = decode_complex(j, path);
  if (!c.is_real()) throw SchemaError(path + ": expected a real number (y = 0)");
  return c.real();
}

Json encode_precision(const Integer& m) {
  if (m.fits_slong_p()) return Json{{"unary_m", m.get_si()}};
  return Json{{"unary_m", m.get_str()}};
}

Integer decode_precision(const Json& j, const std::string& path) {
  Integer m = decode_int_string(field(j, "unary_m", path), path + ".unary_m");
  if (sgn(m) <= 0) throw SchemaError(path + ".unary_m: must be positive");
  return m;
}

Json encode_matrix(const ExactMatrix& m) {
  Json nz = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) nz.push_back(Json{{"i", r}, {"j", c}, {"v", encode_complex(m(r, c))}});
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"nonzeros", std::move(nz)}};
}

ExactMatrix decode_matrix(const Json& j, const std::string& path) {
  const std::size_t rows = decode_size(field(j, "rows", path), path + ".rows");
  const std::size_t cols = decode_size(field(j, "cols", path), path + ".cols");
  if (rows == 0 || cols == 0) throw SchemaError(path + ": dimensions must be positive");
  const Json& nz = field(j, "nonzeros", path);
  if (!nz.is_array()) throw SchemaError(path + ".nonzeros: expected an array");
  ExactMatrix out(rows, cols);
  for (std::size_t t = 0; t < nz.size(); ++t) {
    const std::string p = path + ".nonzeros[" + std::to_string(t) + "]";
    const std::size_t r = decode_size(field(nz[t], "i", p), p + ".i");
    const std::size_t c = decode_size(field(nz[t], "j", p), p + ".j");
    if (r >= rows || c >= cols) throw SchemaError(p + ": index outside the matrix");
    out(r, c) = decode_complex(field(nz[t], "v", p), p + ".v");
  }
  return out;
}

Json to_json(const UqmInstance& inst) {
  Json j = header("uqm");
  j["dim"] = inst.dim();
  Json ops = Json::array();
  for (const auto& a : inst.operators()) ops.push_back(encode_matrix(a));
  j["operators"] = std::move(ops);
  j["alpha"] = encode_real(inst.alpha());
  j["precision"] = encode_precision(inst.precision_m());
  return j;
}

Json to_json(const WoptInstance& inst) {
  Json j = header("wopt");
  j["u"] = encode_vector(inst.u());
  j["beta"] = encode_real(inst.beta());
  j["precision"] = encode_precision(inst.precision_m());
  return j;
}

Json to_json(const WmemInstance& inst) {
  Json j = header("wmem");
  j["x"] = encode_vector(inst.x());
  j["precision"] = encode_precision(inst.precision_m());
  return j;
}

Json to_json(const MudInstance& inst) {
  Json j = header("mud");
  j["n"] = inst.n();
  j["choi"] = encode_matrix(inst.choi());
  j["precision"] = encode_precision(inst.precision_m());
  return j;
}

AnyInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("document: expected an object");
  const Json& schema = field(j, "schema", "document");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaVersion) {
    throw SchemaError("document.schema: expected \"" + std::string(kSchemaVersion) + "\"");
  }
  const Json& type_field = field(j, "type", "document");
  if (!type_field.is_string()) throw SchemaError("document.type: expected a string");
  const std::string type = type_field.get<std::string>();
  const Integer m = decode_precision(field(j, "precision", "document"), "precision");

  if (type == "uqm") {
    const std::size_t dim = decode_size(field(j, "dim", "document"), "dim");
    const Json& ops = field(j, "operators", "document");
    if (!ops.is_array()) throw SchemaError("operators: expected an array");
    std::vector<ExactMatrix> operators;
    operators.reserve(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      operators.push_back(decode_matrix(ops[i], "operators[" + std::to_string(i) + "]"));
    }
    Rational alpha = decode_real(field(j, "alpha", "document"), "alpha");
    return validated(type, [&] { return AnyInstance(UqmInstance(dim, std::move(operators), alpha, m)); });
  }
  if (type == "wopt") {
    auto u = decode_vector(field(j, "u", "document"), "u");
    Rational beta = decode_real(field(j, "beta", "document"), "beta");
    return validated(type, [&] { return AnyInstance(WoptInstance(std::move(u), beta, m)); });
  }
  if (type == "wmem") {
    auto x = decode_vector(field(j, "x", "document"), "x");
    return validated(type, [&] { return AnyInstance(WmemInstance(std::move(x), m)); });
  }
  if (type == "mud") {
    const std::size_t n = decode_size(field(j, "n", "document"), "n");
    ExactMatrix choi = decode_matrix(field(j, "choi", "document"), "choi");
    return validated(type, [&] { return AnyInstance(MudInstance(n, std::move(choi), m)); });
  }
  throw SchemaError("document.type: unknown instance type '" + type + "'");
}

Json unitary_to_json(const FloatMatrix& u) {
  Json entries = Json::array();
  for (const auto& z : u.entries()) entries.push_back(Json{{"re", z.real()}, {"im", z.imag()}});
  Json j = header("unitary");
  j["encoding"] = "float";
  j["dim"] = u.rows();
  j["entries"] = std::move(entries);
  return j;
}

Json unitary_to_json(const ExactMatrix& u) {
  Json j = header("unitary");
  j["encoding"] = "rational";
  j["dim"] = u.rows();
  Json entries = Json::array();
  for (const auto& z : u.entries()) entries.push_back(encode_complex(z));
  j["entries"] = std::move(entries);
  return j;
}

FloatMatrix unitary_from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", std::string()) != kSchemaVersion) {
    throw SchemaError("document.schema: expected \"" + std::string(kSchemaVersion) + "\"");
  }
  if (j.value("type", std::string()) != "unitary") throw SchemaError("document.type: expected \"unitary\"");
  const std::size_t n = decode_size(field(j, "dim", "document"), "dim");
  const Json& entries = field(j, "entries", "document");
  if (!entries.is_array() || entries.size() != n * n) {
    throw SchemaError("entries: expected " + std::to_string(n * n) + " entries");
  }
  const Json& enc = field(j, "encoding", "document");
  FloatMatrix u(n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    const std::string p = "entries[" + std::to_string(i) + "]";
    if (enc == "float") {
      const Json& re = field(entries[i], "re", p);
      const Json& im = field(entries[i], "im", p);
      if (!re.is_number() || !im.is_number()) throw SchemaError(p + ": expected numeric re/im");
      u.entries()[i] = Complex(re.get<double>(), im.get<double>());
    } else if (enc == "rational") {
      u.entries()[i] = decode_complex(entries[i], p).to_complex();
    } else {
      throw SchemaError("encoding: expected \"float\" or \"rational\"");
    }
  }
  return u;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

std::string canonical_dump(const Json& j) { return j.dump(); }

}  // namespace muhard

#include "muhard/audit.hpp"

#include <sstream>

#include "muhard/error.hpp"

namespace muhard {

Integer Polynomial::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coefficients.size(); ++i) os << (i ? "," : "") << coefficients[i].get_str();
  return os.str();
}

Polynomial Polynomial::parse(std::string_view text) {
  Polynomial p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    p.coefficients.push_back(parse_integer(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return p;
}

namespace {

struct Maxima {
  Integer x = 0, y = 0, z = 0;

  void add(const Integer& ax, const Integer& ay, const Integer& az) {
    if (abs(ax) > x) x = abs(ax);
    if (abs(ay) > y) y = abs(ay);
    if (abs(az) > z) z = abs(az);
  }
  void add(const RationalComplex& c) { add(c.x(), c.y(), c.z()); }
  void add(const Rational& r) { add(r.get_num(), Integer(0), r.get_den()); }
  void add(const ExactMatrix& m) {
    for (const auto& e : m.entries()) add(e);
  }
  void add(const std::vector<Rational>& v) {
    for (const auto& e : v) add(e);
  }
};

Maxima collect(const AnyInstance& inst) {
  Maxima mx;
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, UqmInstance>) {
          for (const auto& a : i.operators()) mx.add(a);
          mx.add(i.alpha());
        } else if constexpr (std::is_same_v<T, WoptInstance>) {
          mx.add(i.u());
          mx.add(i.beta());
        } else if constexpr (std::is_same_v<T, WmemInstance>) {
          mx.add(i.x());
        } else {
          mx.add(i.choi());
        }
      },
      inst);
  return mx;
}

}  // namespace

Integer instance_length(const AnyInstance& inst) {
  return std::visit(
      [](const auto& i) {
        Integer bytes(static_cast<unsigned long>(canonical_dump(to_json(i)).size()));
        return Integer(bytes + i.precision_m());
      },
      inst);
}

PBoundedReport audit_p_bounded(const AnyInstance& inst, const Polynomial& p) {
  Maxima mx = collect(inst);
  PBoundedReport r;
  r.max_abs_x = mx.x;
  r.max_abs_y = mx.y;
  r.max_abs_z = mx.z;
  r.length = instance_length(inst);
  r.p_of_length = p(r.length);
  r.bounded = mx.x <= r.p_of_length && mx.y <= r.p_of_length && mx.z <= r.p_of_length;
  return r;
}

Json to_json(const PBoundedReport& report) {
  return Json{{"max_abs_x", report.max_abs_x.get_str()}, {"max_abs_y", report.max_abs_y.get_str()},
              {"max_abs_z", report.max_abs_z.get_str()}, {"length", report.length.get_str()},
              {"p_of_length", report.p_of_length.get_str()}, {"bounded", report.bounded}};
}

}  // namespace muhard

#include "muhard/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "muhard/error.hpp"

namespace muhard {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw SchemaError("empty integer string");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw SchemaError("malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw SchemaError("malformed integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational make_rational(const Integer& numerator, const Integer& denominator) {
  if (sgn(denominator) == 0) throw SchemaError("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Integer trunc(const Rational& value) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational encoding");
  return Rational(value);
}

RationalComplex::RationalComplex(const Rational& real) : RationalComplex(real, Rational(0)) {}

RationalComplex::RationalComplex(const Rational& real, const Rational& imag) {
  // Common denominator lcm(den(real), den(imag)).
  Integer den;
  mpz_lcm(den.get_mpz_t(), real.get_den_mpz_t(), imag.get_den_mpz_t());
  x_ = real.get_num() * (den / real.get_den());
  y_ = imag.get_num() * (den / imag.get_den());
  z_ = den;
  canonicalize();
}

RationalComplex::RationalComplex(Integer x, Integer y, Integer z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (sgn(z_) == 0) throw SchemaError("rational triple has z = 0");
  canonicalize();
}

void RationalComplex::canonicalize() {
  if (sgn(z_) < 0) {
    x_ = -x_;
    y_ = -y_;
    z_ = -z_;
  }
  if (sgn(x_) == 0 && sgn(y_) == 0) {
    z_ = 1;
    return;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), x_.get_mpz_t(), y_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(x_.get_mpz_t(), x_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(y_.get_mpz_t(), y_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(z_.get_mpz_t(), z_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational RationalComplex::norm_sq() const {
  return make_rational(x_ * x_ + y_ * y_, z_ * z_);
}

std::complex<double> RationalComplex::to_complex() const {
  return {real().get_d(), imag().get_d()};
}

RationalComplex& RationalComplex::operator+=(const RationalComplex& other) {
  if (z_ == other.z_) {
    x_ += other.x_;
    y_ += other.y_;
  } else {
    x_ = x_ * other.z_ + other.x_ * z_;
    y_ = y_ * other.z_ + other.y_ * z_;
    z_ *= other.z_;
  }
  canonicalize();
  return *this;
}

RationalComplex& RationalComplex::operator-=(const RationalComplex& other) { return *this += -other; }

RationalComplex& RationalComplex::operator*=(const RationalComplex& other) {
  Integer x = x_ * other.x_ - y_ * other.y_;
  Integer y = x_ * other.y_ + y_ * other.x_;
  x_ = std::move(x);
  y_ = std::move(y);
  z_ *= other.z_;
  canonicalize();
  return *this;
}

RationalComplex& RationalComplex::operator/=(const RationalComplex& other) {
  if (other.is_zero()) throw std::domain_error("division by zero");
  // (x1 + i y1)/z1 * (x2 - i y2) z2 / (x2^2 + y2^2)
  Integer x = (x_ * other.x_ + y_ * other.y_) * other.z_;
  Integer y = (y_ * other.x_ - x_ * other.y_) * other.z_;
  x_ = std::move(x);
  y_ = std::move(y);
  z_ *= other.x_ * other.x_ + other.y_ * other.y_;
  canonicalize();
  return *this;
}

std::string RationalComplex::to_string() const {
  return "(" + x_.get_str() + ", " + y_.get_str() + ", " + z_.get_str() + ")";
}

int QuadraticSurd::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sp >= 0 && sq >= 0) return (sp > 0 || sq > 0) ? 1 : 0;
  if (sp <= 0 && sq <= 0) return -1;
  Rational diff = p_ * p_ - 3 * q_ * q_;
  return sp > 0 ? sgn(diff) : -sgn(diff);
}

double QuadraticSurd::to_double() const { return p_.get_d() + q_.get_d() * std::sqrt(3.0); }

QuadraticSurd cube_root_combination_norm_sq(const RationalComplex& a, const RationalComplex& b,
                                            const RationalComplex& c) {
  RationalComplex ab = a.conj() * b;
  RationalComplex ac = a.conj() * c;
  RationalComplex bc = b.conj() * c;
  Rational p = a.norm_sq() + b.norm_sq() + c.norm_sq() - ab.real() - ac.real() - bc.real();
  Rational q = -ab.imag() + ac.imag() - bc.imag();
  return {p, q};
}

}  // namespace muhard

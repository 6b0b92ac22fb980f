#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace muhard {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
Rational make_rational(const Integer& numerator, const Integer& denominator);

/// Rounds toward zero: trunc(3/2) = 1, trunc(-3/2) = -1.
Integer trunc(const Rational& value);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

/// A complex rational (x + iy)/z stored in lowest terms: z > 0 and
/// gcd(x, y, z) = 1. Zero is stored as (0, 0, 1).
class RationalComplex {
 public:
  RationalComplex() : x_(0), y_(0), z_(1) {}
  RationalComplex(long value) : x_(value), y_(0), z_(1) {}  // NOLINT(implicit)
  RationalComplex(const Rational& real);                    // NOLINT(implicit)
  RationalComplex(const Rational& real, const Rational& imag);
  RationalComplex(Integer x, Integer y, Integer z);

  static RationalComplex i() { return {Integer(0), Integer(1), Integer(1)}; }

  const Integer& x() const { return x_; }
  const Integer& y() const { return y_; }
  const Integer& z() const { return z_; }

  Rational real() const { return make_rational(x_, z_); }
  Rational imag() const { return make_rational(y_, z_); }
  Rational norm_sq() const;

  bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
  bool is_real() const { return sgn(y_) == 0; }

  std::complex<double> to_complex() const;

  RationalComplex conj() const { return {x_, -y_, z_}; }

  RationalComplex& operator+=(const RationalComplex& other);
  RationalComplex& operator-=(const RationalComplex& other);
  RationalComplex& operator*=(const RationalComplex& other);
  RationalComplex& operator/=(const RationalComplex& other);

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
  friend RationalComplex operator-(const RationalComplex& a) { return {-a.x_, -a.y_, a.z_}; }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void canonicalize();

  Integer x_;
  Integer y_;
  Integer z_;
};

inline RationalComplex conj(const RationalComplex& value) { return value.conj(); }

/// Element p + q·√3 of the real field Q(√3); used to evaluate squared moduli
/// of sums of cube roots of unity without rounding.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational rational_part, Rational sqrt3_part)
      : p_(std::move(rational_part)), q_(std::move(sqrt3_part)) {}

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt3_part() const { return q_; }

  /// Sign of p + q√3, decided exactly.
  int sign() const;
  double to_double() const;

  QuadraticSurd& operator+=(const QuadraticSurd& other) {
    p_ += other.p_;
    q_ += other.q_;
    return *this;
  }
  friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) {
    return {a.p_ - b.p_, a.q_ - b.q_};
  }
  friend bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).sign() < 0; }
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator<(const QuadraticSurd& a, const Rational& b) { return (a - QuadraticSurd(b, 0)).sign() < 0; }
  friend bool operator>=(const QuadraticSurd& a, const Rational& b) { return !(a < b); }

 private:
  Rational p_{0};
  Rational q_{0};
};

/// |a + b·ω + c·ω²|² for ω = exp(2πi/3) and complex rationals a, b, c.
QuadraticSurd cube_root_combination_norm_sq(const RationalComplex& a, const RationalComplex& b,
                                            const RationalComplex& c);

}  // namespace muhard

#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

namespace tpsharp {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/*
 * A matrix entry or parameter value.
 *
 * Exact scalars are GMP rationals (always canonical: lowest terms, positive
 * denominator). Approx scalars are binary64. Arithmetic between two exact
 * values stays exact; anything touching an approx value becomes approx.
 */
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}
  Scalar(long v) : value_(Rational(v)) {}
  Scalar(long long v) : value_(Rational(v)) {}
  Scalar(const Rational& v) : value_(v) {}
  Scalar(Rational&& v) : value_(std::move(v)) {}
  Scalar(const Integer& v) : value_(Rational(v)) {}

  // Deliberately not an implicit conversion: a double never becomes a
  // Scalar by accident.
  static Scalar approx(double v) {
    Scalar s;
    s.value_ = v;
    return s;
  }

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }

  // Throws Error(NotExact) for approx values.
  const Rational& rational() const;
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Scalar to_approx() const { return approx(to_double()); }

  // "p/q" (or "p" for integers) when exact, shortest round-trip decimal
  // otherwise.
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, double> value_;
};

Scalar pow(const Scalar& base, unsigned exponent);
Rational pow(const Rational& base, unsigned exponent);
Scalar abs(const Scalar& v);

// Exact binary expansion of a finite double.
Rational to_rational(double v);
double to_double(const Rational& v);

std::string to_string(const Rational& v);

// Accepts "p/q", "p" and decimal literals ("2.99", "1e-3"); decimals are
// converted to their exact decimal rational value (2.99 -> 299/100).
Rational parse_rational(std::string_view text);

// Cell semantics: "p/q" and integers are exact, decimal literals are approx.
Scalar parse_scalar(std::string_view text);

// True when `text` is written as a decimal literal (has '.', 'e' or 'E').
bool is_decimal_literal(std::string_view text);

}  // namespace tpsharp

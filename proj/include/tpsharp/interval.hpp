#pragma once

#include "tpsharp/scalar.hpp"

namespace tpsharp {

// Closed interval [lo, hi] with rational endpoints. Constants produced by
// the numerics module are certified to lie inside; arithmetic below is
// exact interval arithmetic, so enclosures stay certified.
class RationalInterval {
 public:
  RationalInterval() = default;
  RationalInterval(Rational lo, Rational hi);
  RationalInterval(Rational lo, Rational hi, Rational width_bound);

  static RationalInterval point(const Rational& v) { return RationalInterval(v, v); }

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  const Rational& width_bound() const noexcept { return width_bound_; }

  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const RationalInterval& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a);

  // Throws BadDomain when the interval contains zero.
  RationalInterval reciprocal() const;

  friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_{0};
  Rational hi_{0};
  Rational width_bound_{0};
};

RationalInterval pow(const RationalInterval& base, unsigned exponent);

}  // namespace tpsharp

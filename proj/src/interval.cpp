#include "tpsharp/interval.hpp"

#include <algorithm>

#include "tpsharp/error.hpp"

namespace tpsharp {

RationalInterval::RationalInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorCode::BadDomain, "interval with hi < lo");
  width_bound_ = hi_ - lo_;
}

RationalInterval::RationalInterval(Rational lo, Rational hi, Rational width_bound)
    : lo_(std::move(lo)), hi_(std::move(hi)), width_bound_(std::move(width_bound)) {
  if (hi_ < lo_) throw Error(ErrorCode::BadDomain, "interval with hi < lo");
  if (hi_ - lo_ > width_bound_) throw Error(ErrorCode::BadWidth, "interval wider than its width bound");
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RationalInterval operator-(const RationalInterval& a) { return RationalInterval(-a.hi_, -a.lo_); }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational p1 = a.lo_ * b.lo_;
  Rational p2 = a.lo_ * b.hi_;
  Rational p3 = a.hi_ * b.lo_;
  Rational p4 = a.hi_ * b.hi_;
  Rational lo = std::min({p1, p2, p3, p4});
  Rational hi = std::max({p1, p2, p3, p4});
  return RationalInterval(std::move(lo), std::move(hi));
}

RationalInterval RationalInterval::reciprocal() const {
  if (contains_zero()) throw Error(ErrorCode::BadDomain, "reciprocal of an interval containing 0");
  return RationalInterval(1 / hi_, 1 / lo_);
}

RationalInterval pow(const RationalInterval& base, unsigned exponent) {
  RationalInterval result = RationalInterval::point(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result = result * base;
  return result;
}

}  // namespace tpsharp

#include "tpsharp/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tpsharp/error.hpp"
#include "tpsharp/numerics.hpp"

namespace tpsharp {

namespace {

void check_c(const Scalar& c) {
  if (c < Scalar(1)) throw Error(ErrorCode::BadDomain, "F_m(c) is defined here for c >= 1, got " + c.str());
}

Integer binomial(unsigned n, unsigned k) {
  Integer r(1);
  for (unsigned t = 1; t <= k; ++t) {
    r *= n - k + t;
    r /= t;  // exact: r is C(n-k+t, t) after this step
  }
  return r;
}

}  // namespace

Scalar f_closed(int m, const Scalar& c) {
  if (m < 0) throw Error(ErrorCode::BadDomain, "F_m needs m >= 0");
  check_c(c);
  const auto mu = static_cast<unsigned>(m);
  if (c.is_exact()) {
    const Rational inv = 1 / c.rational();
    Rational sum(0);
    Rational inv_pow(1);
    for (unsigned j = 0; j <= mu / 2; ++j) {
      Rational term = Rational(binomial(mu - j, j)) * inv_pow;
      if (j % 2) sum -= term; else sum += term;
      inv_pow *= inv;
    }
    return Scalar(std::move(sum));
  }
  const double inv = 1.0 / c.to_double();
  double sum = 0, inv_pow = 1;
  for (unsigned j = 0; j <= mu / 2; ++j) {
    double term = binomial(mu - j, j).convert_to<double>() * inv_pow;
    sum += (j % 2) ? -term : term;
    inv_pow *= inv;
  }
  return Scalar::approx(sum);
}

FSequence f_recurrence(int max_m, const Scalar& c) {
  if (max_m < 0) throw Error(ErrorCode::BadDomain, "F_m needs m >= 0");
  check_c(c);
  FSequence seq{c, {}};
  seq.values.reserve(static_cast<std::size_t>(max_m) + 1);
  const Scalar inv = Scalar(1) / c;
  for (int m = 0; m <= max_m; ++m) {
    if (m < 2) {
      seq.values.push_back(c.is_exact() ? Scalar(1) : Scalar::approx(1.0));
    } else {
      const auto t = static_cast<std::size_t>(m);
      seq.values.push_back(seq.values[t - 1] - inv * seq.values[t - 2]);
    }
  }
  return seq;
}

std::vector<RationalInterval> f_recurrence(int max_m, const RationalInterval& c) {
  if (max_m < 0) throw Error(ErrorCode::BadDomain, "F_m needs m >= 0");
  if (c.lo().sign() <= 0) throw Error(ErrorCode::BadDomain, "interval F_m needs c > 0");
  const RationalInterval inv = c.reciprocal();
  std::vector<RationalInterval> out;
  out.reserve(static_cast<std::size_t>(max_m) + 1);
  for (int m = 0; m <= max_m; ++m) {
    if (m < 2) {
      out.push_back(RationalInterval::point(Rational(1)));
    } else {
      const auto t = static_cast<std::size_t>(m);
      out.push_back(out[t - 1] - inv * out[t - 2]);
    }
  }
  return out;
}

double f_trig(int m, double phi) {
  if (!(phi > 0 && phi < std::numbers::pi / 2)) {
    throw Error(ErrorCode::BadDomain, "f_trig needs phi in (0, pi/2)");
  }
  if (m < 0) throw Error(ErrorCode::BadDomain, "F_m needs m >= 0");
  const double cs = std::cos(phi);
  const double c = 4 * cs * cs;
  return std::sin((m + 1) * phi) / (std::pow(c, m / 2.0) * std::sin(phi));
}

std::vector<RationalInterval> f_roots(int n, const Rational& width) {
  if (n < 2) throw Error(ErrorCode::BadDomain, "f_roots needs n >= 2");
  std::vector<RationalInterval> roots;
  for (int j = 1; j <= n / 2; ++j) roots.push_back(chebyshev_root_enclosure(n, j, width));
  return roots;
}

namespace {

void check_t4(int k, int j) {
  if (k < 3 || j < 2 || j > k - 1) {
    throw Error(ErrorCode::BadDomain, "t4 margin needs k >= 3 and 2 <= j <= k-1");
  }
}

}  // namespace

RationalInterval t4_margin_enclosure(int k, int j, const Rational& width) {
  check_t4(k, j);
  const RationalInterval c = ck_enclosure(k, width);
  const auto f = f_recurrence(j, c);
  const RationalInterval inv = c.reciprocal();
  const auto uj = static_cast<std::size_t>(j);
  return f[uj - 1] - f[uj - 2] * pow(inv, 2) - pow(inv, static_cast<unsigned>(j)) - f[uj];
}

Scalar t4_margin(int k, int j) {
  check_t4(k, j);
  const RationalInterval c = ck_enclosure(k, Rational(1, 1LL << 60));
  const Rational cm = c.mid();
  const Rational inv = 1 / cm;
  const auto uj = static_cast<unsigned>(j);
  Rational v = chebyshev_f_exact(j - 1, cm) - chebyshev_f_exact(j - 2, cm) * inv * inv - pow(inv, uj) -
               chebyshev_f_exact(j, cm);
  if (c.is_point()) return Scalar(std::move(v));
  return Scalar::approx(to_double(v));
}

}  // namespace tpsharp

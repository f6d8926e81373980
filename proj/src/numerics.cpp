#include "tpsharp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "tpsharp/error.hpp"

namespace tpsharp {

std::string_view to_string(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
    case Sign::Uncertain: return "Uncertain";
  }
  return "Uncertain";
}

SignClass classify_exact(const Rational& value) {
  Sign s = value.sign() > 0 ? Sign::Positive : value.sign() < 0 ? Sign::Negative : Sign::Zero;
  return SignClass{s, Scalar(Rational(abs(value)))};
}

Integer bareiss_determinant(std::vector<Integer> a, std::size_t n) {
  if (n == 0) return Integer(1);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  bool negate = false;
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return Integer(0);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(r, j));
      negate = !negate;
    }
    const Integer& pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = at(i, j) * pivot - at(i, k) * at(k, j);
        // Exact: every intermediate is a minor of the input.
        at(i, j) = v / prev;
      }
    }
    prev = pivot;
  }
  Integer d = at(n - 1, n - 1);
  return negate ? Integer(-d) : d;
}

ScaledIntegerMatrix ScaledIntegerMatrix::from(const Matrix& m) {
  ScaledIntegerMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  Integer den(1);
  for (const auto& e : m.entries()) {
    const Rational& r = e.rational();
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(r));
  }
  out.denominator = den;
  out.entries.reserve(m.entries().size());
  for (const auto& e : m.entries()) {
    const Rational& r = e.rational();
    out.entries.push_back(boost::multiprecision::numerator(r) * (den / boost::multiprecision::denominator(r)));
  }
  return out;
}

Integer ScaledIntegerMatrix::minor(std::span<const std::size_t> rows_sel,
                                   std::span<const std::size_t> cols_sel) const {
  const std::size_t n = rows_sel.size();
  std::vector<Integer> a;
  a.reserve(n * n);
  for (std::size_t r : rows_sel) {
    for (std::size_t c : cols_sel) a.push_back(entries[(r - 1) * cols + (c - 1)]);
  }
  return bareiss_determinant(std::move(a), n);
}

Rational det_exact(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (!m.is_exact()) throw Error(ErrorCode::NotExact, "det_exact needs exact entries");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  // Clear denominators row by row: det(M) = det(D M) / prod(d_i).
  std::vector<Integer> a;
  a.reserve(n * n);
  Integer scale(1);
  for (std::size_t i = 1; i <= n; ++i) {
    Integer den(1);
    for (std::size_t j = 1; j <= n; ++j) {
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(m(i, j).rational()));
    }
    for (std::size_t j = 1; j <= n; ++j) {
      const Rational& r = m(i, j).rational();
      a.push_back(boost::multiprecision::numerator(r) * (den / boost::multiprecision::denominator(r)));
    }
    scale *= den;
  }
  return Rational(bareiss_determinant(std::move(a), n), scale);
}

FloatDet det_float(const Matrix& m, double tau) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<double> a(n * n);
  for (std::size_t t = 0; t < n * n; ++t) a[t] = m.entries()[t].to_double();

  double bound = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    bound *= std::sqrt(s);
  }

  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a[i * n + k]) > std::fabs(a[piv * n + k])) piv = i;
    }
    if (a[piv * n + k] == 0.0) {
      det = 0.0;
      break;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    const double p = a[k * n + k];
    det *= p;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / p;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }

  FloatDet out;
  out.value = det;
  out.hadamard_bound = bound;
  out.sign.witness_magnitude = Scalar::approx(std::fabs(det));
  if (bound == 0.0) {
    out.sign.verdict = Sign::Zero;
  } else if (std::fabs(det) <= tau * bound) {
    out.sign.verdict = Sign::Uncertain;
  } else {
    out.sign.verdict = det > 0 ? Sign::Positive : Sign::Negative;
  }
  return out;
}

SignClass classify_det(const Matrix& m, double tau) {
  if (m.is_exact()) return classify_exact(det_exact(m));
  return det_float(m, tau).sign;
}

Rational chebyshev_f_exact(int m, const Rational& c) {
  if (m < 0) throw Error(ErrorCode::BadDomain, "F_m needs m >= 0");
  if (c.sign() == 0) throw Error(ErrorCode::BadDomain, "F_m(c) needs c != 0");
  Rational inv = 1 / c;
  Rational prev(1), cur(1);
  for (int t = 2; t <= m; ++t) {
    Rational next = cur - inv * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

void check_width(const Rational& width) {
  if (width.sign() <= 0) throw Error(ErrorCode::BadWidth, "enclosure width must be positive");
}

double root_estimate(int n, int j) {
  double c = std::cos(j * std::numbers::pi / (n + 1));
  return 4 * c * c;
}

}  // namespace

RationalInterval chebyshev_root_enclosure(int n, int j, const Rational& width) {
  check_width(width);
  if (n < 2 || j < 1 || j > n / 2) {
    throw Error(ErrorCode::BadDomain, "root index j must satisfy 1 <= j <= n/2 with n >= 2");
  }
  const double est = root_estimate(n, j);

  // F_n has rational roots only at 1, 2 and 3 (the rational values of
  // 4cos^2 of a rational multiple of pi below 4).
  for (int cand : {1, 2, 3}) {
    if (std::fabs(est - cand) < 1e-6 && chebyshev_f_exact(n, Rational(cand)) == 0) {
      return RationalInterval(Rational(cand), Rational(cand), width);
    }
  }

  double gap = est;  // distance to 0 bounds the next root below
  if (j > 1) gap = std::min(gap, root_estimate(n, j - 1) - est);
  if (j + 1 <= n / 2) gap = std::min(gap, est - root_estimate(n, j + 1));

  double delta = 1e-12 * std::max(1.0, est);
  Rational lo, hi;
  int lo_sign = 0;
  for (;;) {
    if (4 * delta >= gap) {
      throw Error(ErrorCode::NoConvergence,
                  "could not bracket root " + std::to_string(j) + " of F_" + std::to_string(n));
    }
    lo = to_rational(est - delta);
    hi = to_rational(est + delta);
    lo_sign = chebyshev_f_exact(n, lo).sign();
    int hi_sign = chebyshev_f_exact(n, hi).sign();
    if (lo_sign * hi_sign < 0) break;
    delta *= 16;
  }
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = chebyshev_f_exact(n, mid).sign();
    if (s == 0) return RationalInterval(mid, mid, width);
    (s == lo_sign ? lo : hi) = mid;
  }
  return RationalInterval(lo, hi, width);
}

RationalInterval ck_enclosure(int k, const Rational& width) {
  check_width(width);
  if (k < 2) throw Error(ErrorCode::BadDomain, "c_k needs k >= 2");
  return chebyshev_root_enclosure(k, 1, width);
}

RationalInterval constant_c_tilde(const Rational& width) {
  check_width(width);
  auto p = [](const Rational& x) { return Rational(((x - 5) * x + 4) * x - 1); };
  Rational lo(4), hi(5);  // p(4) = -1 < 0 < 19 = p(5)
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = p(mid).sign();
    if (s == 0) return RationalInterval(mid, mid, width);
    (s < 0 ? lo : hi) = mid;
  }
  return RationalInterval(lo, hi, width);
}

namespace {

// Lower and upper bounds of sum_{n>=1} d^(-n^2) using n <= terms exactly
// and a geometric bound for the rest: successive tail terms shrink by at
// most d^-(2 terms + 3).
std::pair<Rational, Rational> d_series_bounds(const Rational& d, unsigned terms) {
  Rational inv = 1 / d;
  Rational partial(0);
  for (unsigned n = 1; n <= terms; ++n) partial += pow(inv, n * n);
  Rational first_tail = pow(inv, (terms + 1) * (terms + 1));
  Rational ratio = pow(inv, 2 * terms + 3);
  return {partial, partial + first_tail / (1 - ratio)};
}

}  // namespace

RationalInterval constant_d(const Rational& width) {
  check_width(width);
  const Rational quarter(1, 4);
  Rational lo(4), hi(5);  // sum is > 1/4 at 4 and < 1/4 at 5
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    unsigned terms = 4;
    for (;;) {
      auto [lower, upper] = d_series_bounds(mid, terms);
      if (lower > quarter) {
        lo = mid;  // sum decreasing in d, so the root lies above mid
        break;
      }
      if (upper < quarter) {
        hi = mid;
        break;
      }
      terms += 4;
      if (terms > 64) throw Error(ErrorCode::NoConvergence, "series bounds failed to separate from 1/4");
    }
  }
  return RationalInterval(lo, hi, width);
}

}  // namespace tpsharp

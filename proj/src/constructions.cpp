#include "tpsharp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <numbers>
#include <string>

#include "tpsharp/error.hpp"

namespace tpsharp {

namespace {

void check_phi_half_open(double phi) {
  if (!(phi >= 0 && phi < std::numbers::pi / 2)) {
    throw Error(ErrorCode::BadDomain, "phi must lie in [0, pi/2)");
  }
}

void check_phi_open(double phi) {
  if (!(phi > 0 && phi < std::numbers::pi / 2)) {
    throw Error(ErrorCode::BadDomain, "phi must lie in (0, pi/2)");
  }
}

std::string dstr(double v) { return Scalar::approx(v).str(); }

}  // namespace

Matrix toeplitz_mn(std::size_t n, double phi) {
  check_phi_half_open(phi);
  if (n < 1) throw Error(ErrorCode::BadDomain, "M_n needs n >= 1");
  std::map<int, Scalar> diags{{0, Scalar::approx(2 * std::cos(phi))},
                              {1, Scalar::approx(1.0)},
                              {-1, Scalar::approx(1.0)}};
  Matrix m = toeplitz_from(diags, n);
  return m.to_approx();
}

double det_mn_closed(std::size_t n, double phi) {
  check_phi_open(phi);
  return std::sin(static_cast<double>(n + 1) * phi) / std::sin(phi);
}

std::vector<double> epsilon_cascade(std::size_t n, double phi, double safety) {
  check_phi_open(phi);
  if (n < 3) throw Error(ErrorCode::BadDomain, "epsilon cascade needs n >= 3");
  if (!(safety > 0 && safety <= 1)) throw Error(ErrorCode::BadDomain, "safety must lie in (0, 1]");
  const double a = 2 * std::cos(phi);
  const double c = a * a;
  std::vector<double> eps;
  eps.reserve(n - 2);
  for (std::size_t j = 1; j <= n - 2; ++j) {
    double e;
    if (j == 1) {
      e = safety / (c * a);
    } else if (j == 2) {
      e = safety * eps[0] * eps[0] / c;
    } else {
      e = safety * eps[j - 2] * eps[j - 2] / (c * eps[j - 3]);
    }
    if (!(e > 0) || (j > 1 && !(e < eps[j - 2]))) {
      throw Error(ErrorCode::BadDomain, "epsilon cascade lost strict decrease at index " + std::to_string(j));
    }
    eps.push_back(e);
  }
  return eps;
}

Matrix toeplitz_tn(std::size_t n, double phi, std::span<const double> eps) {
  check_phi_half_open(phi);
  if (n < 2) throw Error(ErrorCode::BadDomain, "T_n needs n >= 2");
  if (eps.size() != n - 2) {
    throw Error(ErrorCode::BadEpsilons, "expected " + std::to_string(n - 2) + " epsilons, got " +
                                            std::to_string(eps.size()));
  }
  for (std::size_t t = 0; t < eps.size(); ++t) {
    if (!(eps[t] > 0) || (t > 0 && !(eps[t] < eps[t - 1]))) {
      throw Error(ErrorCode::BadEpsilons, "epsilons must be positive and strictly decreasing");
    }
  }
  std::map<int, Scalar> diags{{0, Scalar::approx(2 * std::cos(phi))},
                              {1, Scalar::approx(1.0)},
                              {-1, Scalar::approx(1.0)}};
  for (std::size_t t = 0; t < eps.size(); ++t) {
    const int off = static_cast<int>(t) + 2;
    diags[off] = Scalar::approx(eps[t]);
    diags[-off] = Scalar::approx(eps[t]);
  }
  return toeplitz_from(diags, n).to_approx();
}

namespace {

// floor division for possibly negative numerators
long long fdiv(long long a, long long b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); }

unsigned p_exponent(long long s) { return static_cast<unsigned>(fdiv(s, 2) * fdiv(s + 1, 2)); }
unsigned q_exponent(long long s) { return static_cast<unsigned>(fdiv(s - 1, 2) * fdiv(s, 2)); }

}  // namespace

Matrix hankel_dn(std::size_t n, const Scalar& p, const Scalar& q) {
  if (n < 1) throw Error(ErrorCode::BadDomain, "D_n needs n >= 1");
  if (p < Scalar(1) || q < Scalar(1)) throw Error(ErrorCode::BadDomain, "D_n needs p, q >= 1");
  std::vector<Scalar> seq;
  for (long long s = 0; s <= 2 * static_cast<long long>(n) - 2; ++s) {
    seq.push_back(pow(p, p_exponent(s)) * pow(q, q_exponent(s)));
  }
  return hankel_from(seq, n);
}

std::pair<long long, long long> lemma4_exponents(int n) {
  if (n < 3) throw Error(ErrorCode::BadDomain, "lemma 4 exponents need n >= 3");
  const long long m = n;
  return {m * (m - 1) * (m - 2) / 3, m * (m - 1) * (2 * m - 1) / 6};
}

namespace {

// Newton divided differences through (xs[i], ys[i]), returned in the
// monomial basis.
std::vector<Rational> interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  std::vector<Rational> poly{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    // poly = poly * (x - xs[i]) + dd[i]
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  return poly;
}

Rational horner(const std::vector<Rational>& poly, const Rational& x) {
  Rational v(0);
  for (std::size_t d = poly.size(); d-- > 0;) v = v * x + poly[d];
  return v;
}

}  // namespace

Lemma4Report lemma4_leading_check(int n, const Rational& p, std::span<const Rational> q_values) {
  auto [alpha, beta] = lemma4_exponents(n);
  if (p < 1) throw Error(ErrorCode::BadDomain, "lemma 4 check needs p >= 1");
  for (std::size_t t = 0; t < q_values.size(); ++t) {
    if (q_values[t] < 1) throw Error(ErrorCode::BadDomain, "q values must be >= 1");
    if (t > 0 && !(q_values[t - 1] < q_values[t])) {
      throw Error(ErrorCode::NotStrictlyIncreasing, "q values must be strictly increasing");
    }
  }

  Lemma4Report rep;
  rep.n = n;
  rep.p = p;
  rep.alpha = alpha;
  rep.beta = beta;
  // Each term of the permutation expansion has q-degree sum_i e(i + sigma(i) - 2)
  // with e convex, so the identity permutation attains the maximum.
  for (long long i = 1; i <= n; ++i) rep.degree_bound += q_exponent(2 * i - 2);
  const auto needed = static_cast<std::size_t>(std::max(alpha, rep.degree_bound)) + 1;
  if (q_values.size() < needed) {
    throw Error(ErrorCode::NeedMorePoints, "need " + std::to_string(needed) + " q values, got " +
                                               std::to_string(q_values.size()));
  }

  rep.q_values.assign(q_values.begin(), q_values.end());
  rep.expected_leading = pow(p, static_cast<unsigned>(beta)) * chebyshev_f_exact(n, p);
  std::vector<Rational> dets;
  for (const Rational& q : q_values) {
    Rational d = det_exact(hankel_dn(static_cast<std::size_t>(n), Scalar(p), Scalar(q)));
    rep.residuals.push_back(d - rep.expected_leading * pow(q, static_cast<unsigned>(alpha)));
    dets.push_back(std::move(d));
  }
  rep.coefficients = interpolate(std::span(rep.q_values).first(needed), std::span(dets).first(needed));
  for (std::size_t t = needed; t < dets.size(); ++t) {
    if (horner(rep.coefficients, rep.q_values[t]) != dets[t]) rep.extra_points_consistent = false;
  }
  const auto ua = static_cast<std::size_t>(alpha);
  rep.leading_coefficient = ua < rep.coefficients.size() ? rep.coefficients[ua] : Rational(0);

  std::vector<Rational> resid = rep.coefficients;
  if (resid.size() <= ua) resid.resize(ua + 1, Rational(0));
  resid[ua] -= rep.expected_leading;
  for (std::size_t d = resid.size(); d-- > 0;) {
    if (resid[d] != 0) {
      rep.residual_degree = static_cast<int>(d);
      break;
    }
  }
  rep.holds = rep.leading_coefficient == rep.expected_leading && rep.residual_degree <= alpha - 1 &&
              rep.extra_points_consistent;
  return rep;
}

namespace {

const Rational& tight_width() {
  static const Rational w(1, 1LL << 60);
  return w;
}

// c_k enclosure with c certified strictly below it, refined while undecided.
RationalInterval certify_below_ck(int k, const Rational& c) {
  Rational width = tight_width();
  const Rational floor_width = Rational(1) / pow(Rational(2), 240);
  for (;;) {
    RationalInterval ck = ck_enclosure(k, width);
    if (c < ck.lo()) return ck;
    const std::string where = "c_" + std::to_string(k) + " in [" + to_string(ck.lo()) + ", " + to_string(ck.hi()) + "]";
    if (c >= ck.hi()) throw Error(ErrorCode::CNotBelowCk, "c = " + to_string(c) + " is not below " + where);
    if (ck.is_point() || width <= floor_width) {
      throw Error(ErrorCode::CNotBelowCk, "undecided: c = " + to_string(c) + " straddles " + where);
    }
    width /= pow(Rational(2), 60);
  }
}

// Upper end of an enclosure of 4cos^2(2 pi / (k + 1)), the second largest
// root of F_k (zero for k = 3).
Rational second_root_hi(int k) {
  if (k < 4) return Rational(0);
  return chebyshev_root_enclosure(k, 2, tight_width()).hi();
}

Rational as_rational(const Scalar& c) { return c.is_exact() ? c.rational() : to_rational(c.to_double()); }

void check_witness_args(int k, const Scalar& c, int min_k) {
  if (k < min_k) throw Error(ErrorCode::BadDomain, "witness search needs k >= " + std::to_string(min_k));
  if (c < Scalar(1)) throw Error(ErrorCode::BadDomain, "witness search needs c >= 1");
}

Rational ceil_on_grid(const Rational& x, unsigned bits) {
  const Integer scale = Integer(1) << bits;
  const Rational scaled = x * scale;
  Integer num = boost::multiprecision::numerator(scaled);
  const Integer& den = boost::multiprecision::denominator(scaled);
  Integer q = num / den;
  if (q * den < num) ++q;
  return Rational(q, scale);
}

}  // namespace

WitnessResult toeplitz_witness(int k, const Scalar& c, const WitnessOptions& opts) {
  check_witness_args(k, c, 2);
  const Rational cr = as_rational(c);
  const RationalInterval ck = certify_below_ck(k, cr);
  const Rational lower = second_root_hi(k);
  // c' sits strictly between c and c_k so the float membership test keeps a margin.
  const Rational c_prime = std::max((lower + ck.lo()) / 2, (cr + ck.lo()) / 2);
  const double cp = to_double(c_prime);
  const double phi = std::acos(std::sqrt(cp) / 2);
  const auto n = static_cast<std::size_t>(k);

  nlohmann::json trail = nlohmann::json::array();
  for (int h = 1; h <= opts.max_halvings; ++h) {
    const double safety = std::ldexp(1.0, -h);
    const std::vector<double> eps = epsilon_cascade(n, phi, safety);
    Matrix t = toeplitz_tn(n, phi, eps);
    FloatDet fd = det_float(t, opts.tau);
    trail.push_back({{"safety", dstr(safety)}, {"det", dstr(fd.value)}, {"sign", to_string(fd.sign.verdict)}});
    if (fd.sign.verdict != Sign::Negative) continue;

    WitnessResult w;
    w.ratio = critical_ratio(t);
    w.membership = compare_ratio(w.ratio.critical_ratio, RationalInterval::point(cr), false, opts.tau);
    if (w.membership != Membership::Yes) continue;
    w.matrix = std::move(t);
    w.c_target = c;
    w.det = Scalar::approx(fd.value);
    w.det_sign = fd.sign;
    w.exact = false;
    nlohmann::json eps_json = nlohmann::json::array();
    for (double e : eps) eps_json.push_back(dstr(e));
    w.params = {{"family", "toeplitz"},
                {"k", k},
                {"ck", {{"lo", to_string(ck.lo())}, {"hi", to_string(ck.hi())}}},
                {"c_prime", to_string(c_prime)},
                {"phi", dstr(phi)},
                {"safety", dstr(safety)},
                {"epsilons", eps_json},
                {"halvings", trail},
                {"monotonicity", "TP2(" + to_string(c_prime) + ") is contained in TP2(" + c.str() + ")"}};
    return w;
  }
  throw Error(ErrorCode::NoConvergence,
              "no negative determinant after " + std::to_string(opts.max_halvings) + " halvings");
}

WitnessResult hankel_witness(int k, const Scalar& c, const WitnessOptions& opts) {
  check_witness_args(k, c, 3);
  const Rational cr = as_rational(c);
  const RationalInterval ck = certify_below_ck(k, cr);
  const Rational target = std::max(cr, (second_root_hi(k) + ck.lo()) / 2);

  // Coarsest dyadic point at or above `target` that still has F_k < 0.
  std::optional<Rational> p0;
  for (unsigned bits = 0; bits <= 256 && !p0; ++bits) {
    Rational cand = ceil_on_grid(target, bits);
    if (cand >= cr && cand < ck.lo() && chebyshev_f_exact(k, cand) < 0) p0 = cand;
  }
  if (!p0) {
    if (chebyshev_f_exact(k, target) < 0) {
      p0 = target;
    } else {
      throw Error(ErrorCode::NoConvergence, "no rational p0 with F_k(p0) < 0 found");
    }
  }

  Rational q(1);
  while (q < 2 || q < 2 * *p0) q *= 2;
  nlohmann::json schedule = nlohmann::json::array();
  for (int step = 0; step <= opts.max_doublings; ++step, q *= 2) {
    Matrix d = hankel_dn(static_cast<std::size_t>(k), Scalar(*p0), Scalar(q));
    Rational det = det_exact(d);
    SignClass sign = classify_exact(det);
    schedule.push_back({{"q", to_string(q)}, {"det_sign", to_string(sign.verdict)}});
    if (sign.verdict != Sign::Negative) continue;

    WitnessResult w;
    w.ratio = critical_ratio(d);
    w.membership = compare_ratio(w.ratio.critical_ratio, RationalInterval::point(cr), false, opts.tau);
    if (w.membership != Membership::Yes) {
      throw Error(ErrorCode::NoConvergence, "Hankel candidate lost membership at c");
    }
    w.matrix = std::move(d);
    w.c_target = c;
    w.det = Scalar(std::move(det));
    w.det_sign = std::move(sign);
    w.exact = true;
    w.params = {{"family", "hankel"},
                {"k", k},
                {"ck", {{"lo", to_string(ck.lo())}, {"hi", to_string(ck.hi())}}},
                {"p", to_string(*p0)},
                {"q", to_string(q)},
                {"F_k(p)", to_string(chebyshev_f_exact(k, *p0))},
                {"q_schedule", schedule},
                {"monotonicity", "TP2(" + to_string(*p0) + ") is contained in TP2(" + c.str() + ")"}};
    return w;
  }
  throw Error(ErrorCode::NoConvergence,
              "no negative determinant after " + std::to_string(opts.max_doublings) + " doublings");
}

}  // namespace tpsharp

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/error.hpp"

using namespace tpsharp;

namespace {
constexpr double kPi = std::numbers::pi;

// q-exponent of the Hankel entry at 0-based index s = i + j.
long long q_exp(std::size_t s) {
  const long long t = static_cast<long long>(s);
  return ((t - 1) / 2) * (t / 2) * (t >= 1);
}
}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("toeplitz_mn") {
    const Matrix m2 = toeplitz_mn(2, kPi / 3);
    CHECK(m2(1, 1).to_double() == doctest::Approx(1.0));
    CHECK(m2(1, 2) == Scalar::approx(1.0));
    CHECK(std::fabs(det_float(m2).value) < 1e-15);
    const Matrix m3 = toeplitz_mn(3, kPi / 4);
    CHECK(m3(2, 2).to_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(m3(1, 3).is_zero());
    CHECK(std::fabs(det_float(m3).value) < 1e-15);
    CHECK(det_float(toeplitz_mn(3, 0.9)).value == doctest::Approx(-0.5649).epsilon(1e-4));
    CHECK_THROWS_AS(toeplitz_mn(3, kPi / 2), Error);
    CHECK_THROWS_AS(toeplitz_mn(3, -0.1), Error);
  }

  TEST_CASE("det_mn_closed") {
    for (double phi : {0.1, 0.5, 1.2}) CHECK(det_mn_closed(1, phi) == doctest::Approx(2 * std::cos(phi)));
    CHECK(std::fabs(det_mn_closed(3, kPi / 4)) < 1e-15);
    for (std::size_t n = 2; n <= 12; ++n) {
      const double lo = kPi / static_cast<double>(n + 1), hi = std::min(2 * lo, kPi / 2);
      for (int g = 1; g < 10; ++g) CHECK(det_mn_closed(n, lo + (hi - lo) * g / 10.0) < 0);
    }
  }

  TEST_CASE("closed form matches elimination, n <= 12") {
    for (std::size_t n = 1; n <= 12; ++n)
      for (int g = 1; g < 60; ++g) {
        const double phi = g * (kPi / 2) / 60.0;
        CHECK(std::fabs(det_float(toeplitz_mn(n, phi)).value - det_mn_closed(n, phi)) <= 1e-10);
      }
  }

  TEST_CASE("epsilon cascade") {
    const auto e = epsilon_cascade(4, kPi / 4, 0.5);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(1 / (4 * std::sqrt(2.0))));
    CHECK(e[0] == doctest::Approx(0.1768).epsilon(1e-3));
    CHECK(e[1] == doctest::Approx(e[0] * e[0] / 4));
    CHECK(e[1] == doctest::Approx(0.0078125));

    const double phi = 0.8, c = 4 * std::cos(phi) * std::cos(phi);
    const auto s = epsilon_cascade(7, phi, 1.0);
    CHECK(c * 2 * std::cos(phi) * s[0] == doctest::Approx(1.0));
    CHECK(s[0] * s[0] == doctest::Approx(c * s[1]));
    for (std::size_t j = 2; j < s.size(); ++j) CHECK(s[j - 1] * s[j - 1] == doctest::Approx(c * s[j - 2] * s[j]));
    for (std::size_t j = 1; j < s.size(); ++j) CHECK(s[j] < s[j - 1]);
    CHECK(epsilon_cascade(3, phi, 1.0).size() == 1);
    CHECK_THROWS_AS(epsilon_cascade(2, phi, 1.0), Error);
    CHECK_THROWS_AS(epsilon_cascade(4, phi, 0.0), Error);
  }

  TEST_CASE("toeplitz_tn") {
    const std::vector<double> tiny{1e-200, 1e-250};
    const Matrix t = toeplitz_tn(4, 0.9, tiny);
    const Matrix m = toeplitz_mn(4, 0.9);
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = 1; j <= 4; ++j) CHECK(std::fabs(t(i, j).to_double() - m(i, j).to_double()) <= 1e-200);

    const double c = 4 * std::cos(0.9) * std::cos(0.9);
    const Matrix tc = toeplitz_tn(4, 0.9, epsilon_cascade(4, 0.9, 0.5));
    const RationalInterval cpt = RationalInterval::point(to_rational(c));
    // the tridiagonal windows sit exactly at c, so the float policy may not
    // certify c itself
    CHECK(is_member(tc, cpt, false) != Membership::No);
    CHECK(critical_ratio(tc).critical_ratio.to_double() == doctest::Approx(c).epsilon(1e-15));
    CHECK(is_member(tc, RationalInterval::point(to_rational(c * (1 - std::ldexp(1.0, -20)))), false) ==
          Membership::Yes);

    const auto small = epsilon_cascade(4, 0.9, 1.0 / 64);
    CHECK(det_float(toeplitz_tn(4, 0.9, small)).sign.verdict == Sign::Negative);

    const std::vector<double> up{0.1, 0.2};
    CHECK_THROWS_AS(toeplitz_tn(4, 0.9, up), Error);
    const std::vector<double> shortv{0.1};
    CHECK_THROWS_AS(toeplitz_tn(4, 0.9, shortv), Error);
  }

  TEST_CASE("cascade keeps the ratio bound, n <= 8") {
    for (std::size_t n = 3; n <= 8; ++n)
      for (int g = 1; g < 12; ++g) {
        const double phi = 0.1 + (kPi / 3 - 0.1) * g / 12.0;  // c >= 1
        const double c = 4 * std::cos(phi) * std::cos(phi);
        const Matrix t = toeplitz_tn(n, phi, epsilon_cascade(n, phi, 0.5));
        CHECK(critical_ratio(t).critical_ratio.to_double() >= c * (1 - 1e-12));
      }
  }

  TEST_CASE("hankel_dn") {
    const Rational p(3, 2), q(3);
    const Matrix d = hankel_dn(3, Scalar(p), Scalar(q));
    const Matrix want{{Scalar(1), 1, Scalar(p)},
                      {Scalar(1), Scalar(p), Scalar(Rational(p * p * q))},
                      {Scalar(p), Scalar(Rational(p * p * q)), Scalar(Rational(pow(p, 4u) * q * q))}};
    CHECK(d == want);
    const Rational expanded = pow(p, 5u) * q * q - 2 * pow(p, 4u) * q * q + 2 * pow(p, 3u) * q - pow(p, 3u);
    CHECK(det_exact(d) == expanded);
    CHECK(det_exact(d) == Rational(-189, 32));
    CHECK(det_exact(d) == oracle::cofactor_det(oracle::grid(d)));
    const Matrix ones = hankel_dn(4, Scalar(1), Scalar(1));
    for (auto& e : ones.entries()) CHECK(e == Scalar(1));
    CHECK_THROWS_AS(hankel_dn(3, Scalar(Rational(1, 2)), Scalar(2)), Error);
  }

  TEST_CASE("hankel_dn critical ratio is min(p, q)") {
    const Rational vals[] = {Rational(1), Rational(5, 4), Rational(2), Rational(7, 2)};
    for (std::size_t n = 2; n <= 6; ++n)
      for (const auto& p : vals)
        for (const auto& q : vals) {
          if (p == q || n < 3) continue;
          CHECK(critical_ratio(hankel_dn(n, Scalar(p), Scalar(q))).critical_ratio == Scalar(std::min(p, q)));
        }
  }

  TEST_CASE("lemma 4 exponents") {
    CHECK(lemma4_exponents(3) == std::pair<long long, long long>{2, 5});
    CHECK(lemma4_exponents(4) == std::pair<long long, long long>{8, 14});
    CHECK(lemma4_exponents(5) == std::pair<long long, long long>{20, 30});
    CHECK_THROWS_AS(lemma4_exponents(2), Error);
  }

  TEST_CASE("q-degree of det D_n equals alpha_n") {
    for (std::size_t n = 3; n <= 8; ++n) {
      const long long top = oracle::max_permutation_weight(n, q_exp);
      CHECK(top == lemma4_exponents(static_cast<int>(n)).first);
    }
  }

  TEST_CASE("lemma 4 leading structure") {
    const Rational p(3, 2);
    std::vector<Rational> qs{Rational(1), Rational(2), Rational(3)};
    const Lemma4Report r = lemma4_leading_check(3, p, qs);
    CHECK(r.holds);
    CHECK(r.residual_degree == 1);
    for (std::size_t t = 0; t < qs.size(); ++t) CHECK(r.residuals[t] == 2 * pow(p, 3u) * qs[t] - pow(p, 3u));
    REQUIRE(r.coefficients.size() >= 3);
    CHECK(r.leading_coefficient == pow(p, 5u) * chebyshev_f_exact(3, p));

    std::vector<Rational> nine;
    for (int q = 1; q <= 9; ++q) nine.emplace_back(q);
    const Lemma4Report r4 = lemma4_leading_check(4, Rational(2), nine);
    CHECK(r4.holds);
    CHECK(r4.leading_coefficient == -4096);
    CHECK(r4.residual_degree <= 7);

    std::vector<Rational> five(nine.begin(), nine.begin() + 5);
    CHECK_THROWS_AS(lemma4_leading_check(4, Rational(2), five), Error);
    std::vector<Rational> dup{Rational(1), Rational(1), Rational(2)};
    CHECK_THROWS_AS(lemma4_leading_check(3, p, dup), Error);
  }

  TEST_CASE("toeplitz witness") {
    const WitnessResult w = toeplitz_witness(3, Scalar(Rational(19, 10)));
    CHECK(w.membership == Membership::Yes);
    CHECK(w.det_sign.verdict == Sign::Negative);
    CHECK(critical_ratio(w.matrix).critical_ratio >= Scalar(Rational(19, 10)));
    CHECK(det_float(w.matrix).value < 0);
    const WitnessResult w4 = toeplitz_witness(4, Scalar(Rational(5, 2)));
    CHECK(w4.membership == Membership::Yes);
    CHECK(w4.det_sign.verdict == Sign::Negative);
    CHECK(w4.params.contains("monotonicity"));
    try {
      toeplitz_witness(3, Scalar(2));
      FAIL("expected CNotBelowCk");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CNotBelowCk);
    }
  }

  TEST_CASE("hankel witness") {
    const WitnessResult w = hankel_witness(3, Scalar(Rational(7, 5)));
    CHECK(w.exact);
    CHECK(w.params["p"] == "3/2");
    CHECK(w.params["q"] == "4");
    CHECK(det_exact(w.matrix) < 0);
    CHECK(w.matrix == hankel_dn(3, Scalar(Rational(3, 2)), Scalar(4)));
    CHECK_THROWS_AS(hankel_witness(3, Scalar(2)), Error);
    const WitnessResult w4 = hankel_witness(4, Scalar(Rational(5, 2)));
    const Rational p0 = parse_rational(w4.params["p"].get<std::string>());
    CHECK(p0 > Rational(1382, 1000));
    CHECK(p0 < Rational(2618, 1000));
    CHECK(chebyshev_f_exact(4, p0) < 0);
    CHECK(det_exact(w4.matrix) < 0);
  }

  TEST_CASE("both witnesses exist just below c_k, k = 3..8") {
    for (int k = 3; k <= 8; ++k) {
      const Rational c = ck_enclosure(k, Rational(1, 1LL << 60)).lo() - Rational(1, 100);
      const WitnessResult t = toeplitz_witness(k, Scalar(c));
      CHECK(t.membership == Membership::Yes);
      CHECK(t.det_sign.verdict == Sign::Negative);
      const WitnessResult h = hankel_witness(k, Scalar(c));
      CHECK(is_member(h.matrix, RationalInterval::point(c), false) == Membership::Yes);
      CHECK(det_exact(h.matrix) < 0);
    }
  }
}

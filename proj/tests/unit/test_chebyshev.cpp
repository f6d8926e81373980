#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tpsharp/chebyshev.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/numerics.hpp"

using namespace tpsharp;

namespace {
// Alternating binomial sum, written out independently of the library.
Rational binomial_sum(int m, const Rational& c) {
  Rational s(0);
  for (int j = 0; 2 * j <= m; ++j) {
    Rational b(1);
    for (int t = 0; t < j; ++t) b = b * (m - j - t) / (t + 1);
    Rational term = b / pow(c, static_cast<unsigned>(j));
    s += (j % 2 == 0) ? term : Rational(-term);
  }
  return s;
}
}  // namespace

TEST_SUITE("chebyshev") {
  TEST_CASE("f_closed examples") {
    for (int c : {1, 2, 7}) {
      CHECK(f_closed(0, Scalar(c)) == Scalar(1));
      CHECK(f_closed(1, Scalar(c)) == Scalar(1));
    }
    CHECK(f_closed(2, Scalar(4)) == Scalar(Rational(3, 4)));
    CHECK(f_closed(4, Scalar(2)) == Scalar(Rational(-1, 4)));
    CHECK_THROWS_AS(f_closed(2, Scalar(Rational(1, 2))), Error);
  }

  TEST_CASE("f_recurrence examples") {
    auto vals = [](int M, int c) { return f_recurrence(M, Scalar(c)).values; };
    CHECK(vals(3, 2) == std::vector<Scalar>{Scalar(1), 1, Scalar(Rational(1, 2)), 0});
    CHECK(vals(3, 4) == std::vector<Scalar>{Scalar(1), 1, Scalar(Rational(3, 4)), Scalar(Rational(1, 2))});
    CHECK(vals(1, 9) == std::vector<Scalar>{Scalar(1), 1});
  }

  TEST_CASE("closed form and recurrence agree exactly for m <= 64") {
    for (const Rational& c : {Rational(1), Rational(3, 2), Rational(2), Rational(7, 3), Rational(4), Rational(11)}) {
      const auto seq = f_recurrence(64, Scalar(c)).values;
      for (int m = 0; m <= 64; ++m) {
        REQUIRE(seq[m] == f_closed(m, Scalar(c)));
        REQUIRE(seq[m].rational() == binomial_sum(m, c));
      }
    }
  }

  TEST_CASE("f_trig examples") {
    CHECK(f_trig(2, std::numbers::pi / 6) == doctest::Approx(2.0 / 3.0));
    CHECK(std::fabs(f_trig(3, std::numbers::pi / 4)) < 1e-14);
    for (int k = 2; k <= 20; ++k) CHECK(std::fabs(f_trig(k, std::numbers::pi / (k + 1))) < 1e-12);
    CHECK_THROWS_AS(f_trig(2, 0.0), Error);
    CHECK_THROWS_AS(f_trig(2, std::numbers::pi / 2), Error);
  }

  TEST_CASE("f_trig matches the closed form on a grid") {
    double worst = 0;
    for (int m = 0; m <= 30; ++m) {
      for (int g = 0; g < 100; ++g) {
        const double phi = 0.05 + (std::numbers::pi / 2 - 0.1) * g / 99.0;
        const double c = 4 * std::cos(phi) * std::cos(phi);
        if (c < 1) continue;  // f_closed is defined for c >= 1
        worst = std::max(worst, std::fabs(f_trig(m, phi) - f_closed(m, Scalar::approx(c)).to_double()));
      }
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("F_k vanishes at c_k") {
    for (int k = 2; k <= 20; ++k) {
      const RationalInterval e = ck_enclosure(k, Rational(1, 1LL << 50));
      const Scalar lo = f_closed(k, Scalar(e.lo())), hi = f_closed(k, Scalar(e.hi()));
      CHECK(lo.sign() * hi.sign() <= 0);
      CHECK(f_recurrence(k, e).back().contains_zero());
    }
  }

  TEST_CASE("F_m is positive above c_m") {
    for (int m = 2; m <= 15; ++m) {
      const Rational top = ck_enclosure(m, Rational(1, 1LL << 40)).hi();
      for (int g = 1; g <= 12; ++g) {
        const Rational c = top + Rational(g * g, 16);
        CHECK(f_closed(m, Scalar(c)).sign() > 0);
      }
    }
  }

  TEST_CASE("f_roots") {
    const Rational w(1, 1LL << 40);
    auto r3 = f_roots(3, w);
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].contains(Rational(2)));
    auto r4 = f_roots(4, w);
    REQUIRE(r4.size() == 2);
    CHECK(to_double(r4[0].mid()) == doctest::Approx(2.6180339887));
    CHECK(to_double(r4[1].mid()) == doctest::Approx(0.3819660113));
    auto r2 = f_roots(2, w);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].contains(Rational(1)));
    for (int n = 2; n <= 12; ++n) {
      auto r = f_roots(n, w);
      CHECK(r.size() == static_cast<std::size_t>(n / 2));
      for (std::size_t j = 1; j < r.size(); ++j) CHECK(r[j].hi() < r[j - 1].lo());
      CHECK(r[0].contains(ck_enclosure(n, w).mid()));
    }
  }

  TEST_CASE("t4 margins") {
    CHECK(t4_margin(3, 2) == Scalar(0));
    CHECK(t4_margin(4, 2).to_double() == doctest::Approx(0.0902).epsilon(1e-3));
    for (int k = 3; k <= 12; ++k)
      for (int j = 2; j <= k - 1; ++j) {
        CHECK(t4_margin(k, j).to_double() >= -1e-12);
        CHECK(t4_margin_enclosure(k, j, Rational(1, 1LL << 60)).hi() >= 0);
      }
    CHECK_THROWS_AS(t4_margin(3, 3), Error);
  }
}

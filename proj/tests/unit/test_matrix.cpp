#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/serialize.hpp"

using namespace tpsharp;

namespace {
std::vector<std::size_t> v(std::initializer_list<std::size_t> l) { return l; }
}

TEST_SUITE("matrix") {
  TEST_CASE("submatrix selections") {
    const Matrix m{{Scalar(1), 2, 3}, {4, 5, 6}, {7, 8, 9}};
    CHECK(submatrix(m, SubmatrixSelector(v({2, 3}), v({2, 3}))) == Matrix{{Scalar(5), 6}, {8, 9}});
    CHECK(submatrix(m, SubmatrixSelector(v({1, 2, 3}), v({1, 2, 3}))) == m);
    const Rational p(3, 2), q(3);
    const Matrix d = hankel_dn(3, Scalar(p), Scalar(q));
    CHECK(submatrix(d, SubmatrixSelector(v({2, 3}), v({1, 2}))) ==
          Matrix{{Scalar(1), Scalar(p)}, {Scalar(p), Scalar(Rational(p * p * q))}});
    CHECK_THROWS_AS(submatrix(m, SubmatrixSelector(v({2, 1}), v({1, 2}))), Error);
    CHECK_THROWS_AS(submatrix(m, SubmatrixSelector(v({1, 4}), v({1, 2}))), Error);
  }

  TEST_CASE("submatrix composes") {
    gen::Rng r(21);
    const Matrix m = gen::rational_matrix(r, 6, 6);
    for (int t = 0; t < 50; ++t) {
      // outer: 4 of 6, inner: 2 of 4
      std::vector<std::size_t> all{1, 2, 3, 4, 5, 6};
      std::shuffle(all.begin(), all.end(), r.eng);
      std::vector<std::size_t> ro(all.begin(), all.begin() + 4);
      std::shuffle(all.begin(), all.end(), r.eng);
      std::vector<std::size_t> co(all.begin(), all.begin() + 4);
      std::sort(ro.begin(), ro.end());
      std::sort(co.begin(), co.end());
      const std::vector<std::size_t> ri{1, 3}, ci{2, 4};
      const Matrix twice = submatrix(submatrix(m, ro, co), ri, ci);
      const std::vector<std::size_t> rc{ro[0], ro[2]}, cc{co[1], co[3]};
      CHECK(twice == submatrix(m, rc, cc));
    }
  }

  TEST_CASE("toeplitz_from") {
    const double phi = 0.7;
    const Matrix m = toeplitz_from({{-1, Scalar(1)}, {0, Scalar::approx(2 * std::cos(phi))}, {1, Scalar(1)}}, 3);
    CHECK(m == toeplitz_mn(3, phi));
    CHECK(toeplitz_from({{0, Scalar(1)}}, 4) == Matrix::identity(4));
    const Matrix u = toeplitz_from({{0, Scalar(5)}, {1, Scalar(3)}, {2, Scalar(1)}}, 3);
    CHECK(u == Matrix{{Scalar(5), 3, 1}, {0, 5, 3}, {0, 0, 5}});
  }

  TEST_CASE("toeplitz offsets round trip") {
    gen::Rng r(22);
    for (int t = 0; t < 30; ++t) {
      std::map<int, Scalar> d;
      for (int o = -3; o <= 3; ++o)
        if (r.integer(0, 2)) d[o] = Scalar(r.rational(9, 4));
      const auto back = toeplitz_offsets(toeplitz_from(d, 4));
      REQUIRE(back.has_value());
      for (const auto& [o, val] : d) CHECK(back->at(o) == val);
    }
    CHECK_FALSE(toeplitz_offsets(Matrix{{Scalar(1), 2}, {3, 4}}).has_value());
  }

  TEST_CASE("hankel_from") {
    std::vector<Scalar> ones(5, Scalar(1));
    const Matrix h = hankel_from(ones, 3);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j <= 3; ++j) CHECK(h(i, j) == Scalar(1));
    const Rational p(2), q(5);
    std::vector<Scalar> s{Scalar(1), 1, Scalar(p), Scalar(Rational(p * p * q)), Scalar(Rational(p * p * p * p * q * q))};
    CHECK(hankel_from(s, 3) == hankel_dn(3, Scalar(p), Scalar(q)));
    CHECK_THROWS_AS(hankel_from(std::span<const Scalar>(s).first(4), 3), Error);
  }

  TEST_CASE("hankel_from is symmetric") {
    gen::Rng r(23);
    for (int t = 0; t < 20; ++t) {
      std::vector<Scalar> s;
      for (int i = 0; i < 11; ++i) s.emplace_back(r.rational(9, 9));
      const Matrix h = hankel_from(s, 6);
      for (std::size_t i = 1; i <= 6; ++i)
        for (std::size_t j = 1; j <= 6; ++j) CHECK(h(i, j) == h(j, i));
    }
  }

  TEST_CASE("band_profile") {
    const Matrix tri{{Scalar(2), 1, 0}, {1, 2, 1}, {0, 1, 2}};
    CHECK(band_profile(tri) == BandProfile{-1, 1});
    const Matrix full{{Scalar(1), 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(band_profile(full) == BandProfile{-2, 2});
    const Matrix hole{{Scalar(2), 1, 0}, {1, 0, 1}, {0, 1, 2}};
    CHECK_FALSE(band_profile(hole).has_value());
    const Matrix upper{{Scalar(2), 1, 0}, {0, 2, 1}, {0, 0, 2}};
    CHECK(band_profile(upper) == BandProfile{0, 1});
  }

  TEST_CASE("csv and json parsing") {
    auto p = parse_matrix("1,2\n3/2,4\n");
    CHECK(p.value == Matrix{{Scalar(1), 2}, {Scalar(Rational(3, 2)), 4}});
    CHECK(p.warnings.empty());
    auto mixed = parse_matrix_csv("1,0.5\n2,3\n");
    CHECK_FALSE(mixed.value.is_exact());
    CHECK_FALSE(mixed.warnings.empty());
    auto exact = parse_matrix_csv("1,0.5\n2,3\n", ParseOptions{true});
    CHECK(exact.value(1, 2) == Scalar(Rational(1, 2)));
    auto j = parse_matrix(R"({"rows":2,"cols":2,"entries":[["1","1/3"],["2","5"]]})");
    CHECK(j.value(1, 2) == Scalar(Rational(1, 3)));
    CHECK(parse_matrix("[[1, 2], [3, 4]]").value == Matrix{{Scalar(1), 2}, {3, 4}});
    CHECK_THROWS_AS(parse_matrix(R"({"rows":3,"cols":2,"entries":[["1","1"],["2","5"]]})"), Error);
    CHECK(parse_matrix(matrix_to_csv(p.value)).value == p.value);
    try {
      parse_matrix_csv("1,2\n3,x\n");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      REQUIRE(e.position().has_value());
      CHECK(e.position()->first == 2);
    }
    CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n"), Error);
  }
}

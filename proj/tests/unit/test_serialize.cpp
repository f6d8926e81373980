#include <doctest.h>

#include "tpsharp/error.hpp"
#include "tpsharp/positivity.hpp"
#include "tpsharp/serialize.hpp"

using namespace tpsharp;

TEST_SUITE("serialize") {
  TEST_CASE("intervals and certificates keep exact strings") {
    const nlohmann::json iv = to_json(RationalInterval(Rational(1, 3), Rational(1, 2)));
    CHECK(iv["lo"] == "1/3");
    CHECK(iv["hi"] == "1/2");
    const Matrix m{{Scalar(1), 1, 1}, {1, 4, 16}, {1, 16, 256}};
    const nlohmann::json c = to_json(theorem1_check(m, true));
    CHECK(c["verdict"].is_string());
    CHECK(c.dump().find("540") != std::string::npos);
    const nlohmann::json mj = to_json(m);
    CHECK(parse_matrix_json(mj.dump()).value == m);
  }

  TEST_CASE("sequences parse from csv and json") {
    CHECK(parse_sequence("1, 2, 1/4").value.size() == 3);
    CHECK(parse_sequence("[\"1\", \"2\", \"1/4\"]").value[2] == Scalar(Rational(1, 4)));
    CHECK(parse_sequence("1\n2\n3\n").value.size() == 3);
    CHECK_THROWS_AS(parse_sequence("1, two"), Error);
  }
}

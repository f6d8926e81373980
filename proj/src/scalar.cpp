#include "tpsharp/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tpsharp/error.hpp"

namespace tpsharp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadWidth: return "BadWidth";
    case ErrorCode::BadDomain: return "BadDomain";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::FactorBelowC: return "FactorBelowC";
    case ErrorCode::InconsistentCorner: return "InconsistentCorner";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NotBanded: return "NotBanded";
    case ErrorCode::BandDegenerate: return "BandDegenerate";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::BadEpsilons: return "BadEpsilons";
    case ErrorCode::CNotBelowCk: return "CNotBelowCk";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NeedMorePoints: return "NeedMorePoints";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

struct Visitor2 {
  template <class Op>
  static std::variant<Rational, double> apply(const std::variant<Rational, double>& a,
                                              const std::variant<Rational, double>& b, Op op) {
    if (auto* ra = std::get_if<Rational>(&a)) {
      if (auto* rb = std::get_if<Rational>(&b)) return op(*ra, *rb);
    }
    auto as_double = [](const std::variant<Rational, double>& v) {
      if (auto* r = std::get_if<Rational>(&v)) return tpsharp::to_double(*r);
      return std::get<double>(v);
    };
    return op(as_double(a), as_double(b));
  }
};

}  // namespace

const Rational& Scalar::rational() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r;
  throw Error(ErrorCode::NotExact, "scalar " + str() + " is not exact");
}

double Scalar::to_double() const {
  if (auto* r = std::get_if<Rational>(&value_)) return tpsharp::to_double(*r);
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (auto* r = std::get_if<Rational>(&value_)) return r->sign();
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::string Scalar::str() const {
  if (auto* r = std::get_if<Rational>(&value_)) return to_string(*r);
  char buf[64];
  double d = std::get<double>(value_);
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string out(buf, res.ptr);
  // Keep approx values visibly decimal so they re-parse as approx.
  if (std::isfinite(d) && out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (auto* r = std::get_if<Rational>(&out.value_)) {
    *r = -*r;
  } else {
    out.value_ = -std::get<double>(out.value_);
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  value_ = Visitor2::apply(value_, rhs.value_, [](const auto& a, const auto& b) {
    return std::variant<Rational, double>(a + b);
  });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  value_ = Visitor2::apply(value_, rhs.value_, [](const auto& a, const auto& b) {
    return std::variant<Rational, double>(a - b);
  });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  value_ = Visitor2::apply(value_, rhs.value_, [](const auto& a, const auto& b) {
    return std::variant<Rational, double>(a * b);
  });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_exact() && rhs.is_zero()) {
    throw Error(ErrorCode::BadDomain, "division by exact zero");
  }
  value_ = Visitor2::apply(value_, rhs.value_, [](const auto& a, const auto& b) {
    return std::variant<Rational, double>(a / b);
  });
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.rational();
    const auto& y = b.rational();
    if (x < y) return std::partial_ordering::less;
    if (x > y) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return a.to_double() <=> b.to_double();
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

Scalar pow(const Scalar& base, unsigned exponent) {
  if (base.is_exact()) return Scalar(pow(base.rational(), exponent));
  return Scalar::approx(std::pow(base.to_double(), static_cast<double>(exponent)));
}

Scalar abs(const Scalar& v) { return v.sign() < 0 ? -v : v; }

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::BadDomain, "non-finite value has no rational form");
  if (v == 0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // 53 significant bits fit exactly in a long long after scaling.
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(m)};
  if (exp > 0) {
    r *= Rational(Integer(1) << exp);
  } else if (exp < 0) {
    r /= Rational(Integer(1) << -exp);
  }
  return r;
}

double to_double(const Rational& v) {
  // mpq_get_d truncates; that is close enough for reporting, certification
  // never goes through this path.
  return v.convert_to<double>();
}

std::string to_string(const Rational& v) { return v.str(); }

bool is_decimal_literal(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(whole) + "'");
  }
  // Leading zeros would otherwise select an octal parse.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  Integer out{std::string(s)};
  return neg ? Integer(-out) : out;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    exp10 = static_cast<long long>(parse_integer(ex, whole));
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw Error(ErrorCode::ParseError, "not a number: '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long long>(fp.size());
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::ParseError, "not a number: '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  if (exp10 > 100000 || exp10 < -100000) {
    throw Error(ErrorCode::ParseError, "exponent out of range: '" + std::string(whole) + "'");
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational r{Integer(digits)};
  Integer ten(10);
  Integer scale = boost::multiprecision::pow(ten, static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0) {
    r *= Rational(scale);
  } else {
    r /= Rational(scale);
  }
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (is_decimal_literal(s)) return parse_decimal(s, text);
  return Rational(parse_integer(s, text));
}

Scalar parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  if (is_decimal_literal(s) && s.find('/') == std::string_view::npos) {
    parse_decimal(s, text);  // validates the literal
    return Scalar::approx(std::strtod(std::string(s).c_str(), nullptr));
  }
  return Scalar(parse_rational(s));
}

}  // namespace tpsharp

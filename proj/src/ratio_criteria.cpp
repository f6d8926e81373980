#include "tpsharp/ratio_criteria.hpp"

#include <string>

#include "tpsharp/error.hpp"

namespace tpsharp {

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Yes: return "Yes";
    case Membership::No: return "No";
    case Membership::Uncertain: return "Uncertain";
  }
  return "Uncertain";
}

namespace {

void require_positive(const Matrix& m) {
  if (auto cell = m.first_nonpositive()) {
    throw Error(ErrorCode::NonPositiveEntry,
                "entry (" + std::to_string(cell->row) + "," + std::to_string(cell->col) + ") = " +
                    m(cell->row, cell->col).str() + " is not positive",
                Error::Position{cell->row, cell->col});
  }
}

}  // namespace

RatioReport critical_ratio(const Matrix& m) {
  if (m.rows() < 2 || m.cols() < 2) {
    throw Error(ErrorCode::TooSmall, "critical ratio needs at least 2 rows and 2 columns");
  }
  require_positive(m);
  RatioReport report;
  bool first = true;
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 1; j < m.cols(); ++j) {
      Scalar r = (m(i, j) * m(i + 1, j + 1)) / (m(i, j + 1) * m(i + 1, j));
      if (first || r < report.critical_ratio) {
        report.critical_ratio = std::move(r);
        report.argmin_cell = Cell{i, j};
        first = false;
      }
    }
  }
  return report;
}

Membership compare_ratio(const Scalar& ratio, const RationalInterval& c, bool strict, double tau) {
  if (ratio.is_exact()) {
    const Rational& r = ratio.rational();
    if (strict) {
      if (r > c.hi()) return Membership::Yes;
      if (r <= c.lo()) return Membership::No;
    } else {
      if (r >= c.hi()) return Membership::Yes;
      if (r < c.lo()) return Membership::No;
    }
    return Membership::Uncertain;
  }
  const double r = ratio.to_double();
  const double hi = to_double(c.hi()) * (1 + tau);
  const double lo = to_double(c.lo()) * (1 - tau);
  if (strict ? r > hi : r >= hi) return Membership::Yes;
  if (strict ? r <= lo : r < lo) return Membership::No;
  return Membership::Uncertain;
}

Membership is_member(const Matrix& m, const RationalInterval& c, bool strict, double tau) {
  return compare_ratio(critical_ratio(m).critical_ratio, c, strict, tau);
}

Scalar lemma_a_margin(const Matrix& m, const Scalar& c, const QuadCells& q) {
  if (!(q.i < q.k && q.j < q.l)) {
    throw Error(ErrorCode::BadDomain, "lemma A cells need i < k and j < l");
  }
  if (q.i < 1 || q.k > m.rows() || q.j < 1 || q.l > m.cols()) {
    throw Error(ErrorCode::IndexOutOfRange, "lemma A cells outside the matrix");
  }
  const auto power = static_cast<unsigned>((q.l - q.j) * (q.k - q.i));
  return m(q.i, q.j) * m(q.k, q.l) - pow(c, power) * m(q.i, q.l) * m(q.k, q.j);
}

Rational FactorSampler::unit() { return Rational(Integer(rng_() >> 48), Integer(65536)); }

Rational FactorSampler::unit_open_below() {
  return Rational(Integer((rng_() >> 48) + 1), Integer(65536));
}

Matrix generate_tp2c(std::size_t k, const Scalar& c, std::span<const Scalar> first_row,
                     std::span<const Scalar> first_col, const std::vector<std::vector<Scalar>>& factors) {
  if (k < 1) throw Error(ErrorCode::BadDomain, "generate_tp2c needs k >= 1");
  if (first_row.size() != k || first_col.size() != k) {
    throw Error(ErrorCode::ShapeMismatch, "first row and column need k entries each");
  }
  if (!(first_row[0] == first_col[0])) {
    throw Error(ErrorCode::InconsistentCorner, "first_row[1] and first_col[1] differ");
  }
  if (c < Scalar(1)) throw Error(ErrorCode::BadDomain, "generate_tp2c needs c >= 1");
  if (factors.size() != k - 1) throw Error(ErrorCode::ShapeMismatch, "factor grid must be (k-1)x(k-1)");
  for (std::size_t t = 0; t < k; ++t) {
    if (first_row[t].sign() <= 0) {
      throw Error(ErrorCode::NonPositiveEntry, "first row entry not positive", Error::Position{1, t + 1});
    }
    if (first_col[t].sign() <= 0) {
      throw Error(ErrorCode::NonPositiveEntry, "first column entry not positive", Error::Position{t + 1, 1});
    }
  }
  Matrix m(k, k);
  for (std::size_t t = 1; t <= k; ++t) {
    m.set(1, t, first_row[t - 1]);
    m.set(t, 1, first_col[t - 1]);
  }
  for (std::size_t i = 1; i < k; ++i) {
    if (factors[i - 1].size() != k - 1) throw Error(ErrorCode::ShapeMismatch, "factor grid must be (k-1)x(k-1)");
    for (std::size_t j = 1; j < k; ++j) {
      const Scalar& r = factors[i - 1][j - 1];
      if (r < c) {
        throw Error(ErrorCode::FactorBelowC, "factor " + r.str() + " below c = " + c.str(),
                    Error::Position{i, j});
      }
      m.set(i + 1, j + 1, r * m(i, j + 1) * m(i + 1, j) / m(i, j));
    }
  }
  return m;
}

namespace {

std::vector<std::vector<Scalar>> draw_factors(std::size_t k, const Scalar& c, const RandomFactorPolicy& p,
                                              FactorSampler& sampler) {
  if (p.spread.sign() < 0) throw Error(ErrorCode::BadDomain, "spread must be >= 0");
  std::vector<std::vector<Scalar>> f(k > 0 ? k - 1 : 0);
  for (auto& row : f) {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      Rational u = (p.strict ? sampler.unit_open_below() : sampler.unit()) * p.spread;
      row.push_back(c * Scalar(Rational(1 + u)));
    }
  }
  return f;
}

}  // namespace

Matrix generate_tp2c(std::size_t k, const Scalar& c, std::span<const Scalar> first_row,
                     std::span<const Scalar> first_col, const RandomFactorPolicy& policy) {
  FactorSampler sampler(policy.seed);
  return generate_tp2c(k, c, first_row, first_col, draw_factors(k, c, policy, sampler));
}

Matrix random_tp2c(std::size_t k, const Scalar& c, const RandomFactorPolicy& policy) {
  FactorSampler sampler(policy.seed);
  std::vector<Scalar> row, col;
  for (std::size_t t = 0; t < k; ++t) row.emplace_back(Rational(1 + sampler.unit()));
  col.push_back(row.front());
  for (std::size_t t = 1; t < k; ++t) col.emplace_back(Rational(1 + sampler.unit()));
  return generate_tp2c(k, c, row, col, draw_factors(k, c, policy, sampler));
}

}  // namespace tpsharp

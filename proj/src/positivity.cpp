#include "tpsharp/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "tpsharp/chebyshev.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/serialize.hpp"

namespace tpsharp {

std::string_view to_string(ClaimKind k) noexcept {
  switch (k) {
    case ClaimKind::DetNonNegative: return "DetNonNegative";
    case ClaimKind::DetPositive: return "DetPositive";
    case ClaimKind::TPk: return "TPk";
    case ClaimKind::STPk: return "STPk";
    case ClaimKind::STP: return "STP";
    case ClaimKind::DetLowerBound: return "DetLowerBound";
    case ClaimKind::PFm: return "PFm";
    case ClaimKind::MomentPositive: return "MomentPositive";
  }
  return "Unknown";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::FailsHypothesis: return "FailsHypothesis";
    case Verdict::Uncertain: return "Uncertain";
  }
  return "Uncertain";
}

namespace {

// Advances `comb` (strictly increasing, values in 1..n) to the next
// combination in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t t = k; t-- > 0;) {
    if (comb[t] < n - (k - 1 - t)) {
      ++comb[t];
      for (std::size_t u = t + 1; u < k; ++u) comb[u] = comb[u - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> index_sets(std::size_t n, std::size_t order, MinorMode mode) {
  std::vector<std::vector<std::size_t>> out;
  if (mode == MinorMode::Contiguous) {
    for (std::size_t first = 1; first + order - 1 <= n; ++first) {
      std::vector<std::size_t> s(order);
      for (std::size_t t = 0; t < order; ++t) s[t] = first + t;
      out.push_back(std::move(s));
    }
    return out;
  }
  std::vector<std::size_t> comb(order);
  for (std::size_t t = 0; t < order; ++t) comb[t] = t + 1;
  do {
    out.push_back(comb);
  } while (next_combination(comb, n));
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// Colex rank of a strictly increasing 1-based index set.
std::size_t colex_rank(std::span<const std::size_t> s) {
  std::size_t r = 0;
  for (std::size_t t = 0; t < s.size(); ++t) r += binom(s[t] - 1, t + 1);
  return r;
}

// Largest minor layer kept in memory for the Laplace recursion.
constexpr std::size_t kLayerCap = std::size_t{1} << 22;

}  // namespace

MinorScan minor_scan(const Matrix& m, std::size_t max_order, MinorMode mode, double tau) {
  if (max_order == 0) throw Error(ErrorCode::BadDomain, "minor order must be at least 1");
  if (max_order > std::min(m.rows(), m.cols())) {
    throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(max_order) + " exceeds matrix shape " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  MinorScan scan;
  scan.order = max_order;
  scan.mode = mode;
  scan.exact = m.is_exact();
  std::optional<ScaledIntegerMatrix> ints;
  if (scan.exact) ints = ScaledIntegerMatrix::from(m);

  bool have_min = false;
  auto visit = [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs, Scalar value,
                   SignClass sign) {
    ++scan.total;
    switch (sign.verdict) {
      case Sign::Positive: break;
      case Sign::Zero: scan.all_positive = false; break;
      case Sign::Negative: scan.all_positive = scan.all_nonnegative = false; break;
      case Sign::Uncertain:
        scan.all_positive = scan.all_nonnegative = false;
        ++scan.uncertain;
        break;
    }
    if (!have_min || value < scan.min_value) {
      scan.min_value = std::move(value);
      scan.argmin = SubmatrixSelector(rs, cs);
      scan.min_sign = std::move(sign);
      have_min = true;
    } else if (value == scan.min_value) {
      SubmatrixSelector sel(rs, cs);
      if (sel < scan.argmin) {
        scan.argmin = std::move(sel);
        scan.min_sign = std::move(sign);
      }
    }
  };

  // Exact all-minors scans expand each minor along its first row, reusing
  // the previous order's minors (indexed by colex rank).
  bool laplace = scan.exact && mode == MinorMode::All;
  std::vector<Integer> prev{Integer(1)};
  std::size_t prev_cols = 1;

  Integer den_pow(1);
  for (std::size_t order = 1; order <= max_order; ++order) {
    if (scan.exact) den_pow *= ints->denominator;
    const auto row_sets = index_sets(m.rows(), order, mode);
    const auto col_sets = index_sets(m.cols(), order, mode);
    if (laplace && row_sets.size() * col_sets.size() > kLayerCap) laplace = false;

    if (laplace) {
      std::vector<std::vector<std::size_t>> drop_rank(col_sets.size());
      std::vector<std::size_t> col_rank(col_sets.size());
      std::vector<std::size_t> tmp;
      for (std::size_t ci = 0; ci < col_sets.size(); ++ci) {
        const auto& cs = col_sets[ci];
        col_rank[ci] = colex_rank(cs);
        for (std::size_t t = 0; t < order; ++t) {
          tmp.clear();
          for (std::size_t u = 0; u < order; ++u) {
            if (u != t) tmp.push_back(cs[u]);
          }
          drop_rank[ci].push_back(colex_rank(tmp));
        }
      }
      std::vector<Integer> cur(row_sets.size() * col_sets.size());
      const std::size_t ncols = col_sets.size();
      for (const auto& rs : row_sets) {
        const std::size_t r1 = rs.front();
        const std::size_t sub_rank = colex_rank(std::span(rs).subspan(1));
        const std::size_t row_rank = colex_rank(rs);
        for (std::size_t ci = 0; ci < ncols; ++ci) {
          const auto& cs = col_sets[ci];
          Integer v(0);
          for (std::size_t t = 0; t < order; ++t) {
            const Integer& a = ints->entries[(r1 - 1) * ints->cols + (cs[t] - 1)];
            if (a == 0) continue;
            const Integer& sub = prev[sub_rank * prev_cols + drop_rank[ci][t]];
            if (t % 2) v -= a * sub; else v += a * sub;
          }
          Rational value(v, den_pow);
          SignClass sign = classify_exact(value);
          visit(rs, cs, Scalar(std::move(value)), std::move(sign));
          cur[row_rank * ncols + col_rank[ci]] = std::move(v);
        }
      }
      prev = std::move(cur);
      prev_cols = ncols;
      continue;
    }

    for (const auto& rs : row_sets) {
      for (const auto& cs : col_sets) {
        if (scan.exact) {
          Rational v(ints->minor(rs, cs), den_pow);
          SignClass sign = classify_exact(v);
          visit(rs, cs, Scalar(std::move(v)), std::move(sign));
        } else {
          FloatDet fd = det_float(submatrix(m, rs, cs), tau);
          visit(rs, cs, Scalar::approx(fd.value), fd.sign);
        }
      }
    }
  }
  return scan;
}

PositivityResult is_tpk(const Matrix& m, std::size_t k, double tau) {
  PositivityResult r{false, minor_scan(m, k, MinorMode::All, tau)};
  r.holds = r.scan.all_nonnegative;
  return r;
}

PositivityResult is_stpk(const Matrix& m, std::size_t k, double tau) {
  PositivityResult r{false, minor_scan(m, k, MinorMode::All, tau)};
  r.holds = r.scan.all_positive;
  return r;
}

PositivityResult is_tp(const Matrix& m, double tau) { return is_tpk(m, std::min(m.rows(), m.cols()), tau); }

PositivityResult is_stp(const Matrix& m, bool contiguous, double tau) {
  const std::size_t k = std::min(m.rows(), m.cols());
  PositivityResult r{false, minor_scan(m, k, contiguous ? MinorMode::Contiguous : MinorMode::All, tau)};
  r.holds = r.scan.all_positive;
  return r;
}

CkComparison compare_with_ck(const Scalar& ratio, int k, bool strict, const CheckOptions& opts) {
  Rational width = opts.ck_width;
  const Rational floor_width = Rational(1) / pow(Rational(2), 240);
  for (;;) {
    RationalInterval ck = ck_enclosure(k, width);
    Membership mem = compare_ratio(ratio, ck, strict, opts.tau);
    if (mem != Membership::Uncertain || !ratio.is_exact() || ck.is_point() || width <= floor_width) {
      return {mem, ck};
    }
    width /= pow(Rational(2), 60);
  }
}

namespace {

Verdict verdict_from(Membership m) {
  switch (m) {
    case Membership::Yes: return Verdict::Holds;
    case Membership::No: return Verdict::FailsHypothesis;
    case Membership::Uncertain: return Verdict::Uncertain;
  }
  return Verdict::Uncertain;
}

struct DetInfo {
  Scalar value;
  SignClass sign;
  double hadamard = 0;
};

DetInfo determinant(const Matrix& m, double tau) {
  if (m.is_exact()) {
    Rational d = det_exact(m);
    SignClass s = classify_exact(d);
    return {Scalar(std::move(d)), std::move(s), 0};
  }
  FloatDet fd = det_float(m, tau);
  return {Scalar::approx(fd.value), fd.sign, fd.hadamard_bound};
}

void put_det(nlohmann::json& details, const DetInfo& d) {
  details["det"] = d.value.str();
  details["det_sign"] = std::string(to_string(d.sign.verdict));
  details["exact"] = d.value.is_exact();
}

void put_oracle(nlohmann::json& details, const PositivityResult& r) {
  details["oracle_checked"] = true;
  details["oracle_holds"] = r.holds;
  details["oracle_scan"] = to_json(r.scan);
}

}  // namespace

Certificate theorem1_check(const Matrix& m, bool strict, const CheckOptions& opts) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "theorem 1 applies to square matrices only");
  RatioReport rr = critical_ratio(m);
  rr.strict = strict;
  const int k = static_cast<int>(m.rows());
  CkComparison cmp = compare_with_ck(rr.critical_ratio, k, strict, opts);

  Certificate cert;
  cert.claim = {strict ? ClaimKind::DetPositive : ClaimKind::DetNonNegative, m.rows()};
  cert.hypothesis = rr;
  cert.constant = cmp.ck;
  cert.verdict = verdict_from(cmp.membership);

  DetInfo d = determinant(m, opts.tau);
  put_det(cert.details, d);
  if (cert.verdict == Verdict::Holds) {
    bool confirmed = strict ? d.sign.verdict == Sign::Positive
                            : (d.sign.verdict == Sign::Positive || d.sign.verdict == Sign::Zero);
    // A float determinant near zero cannot contradict the conclusion.
    cert.details["conclusion_confirmed"] = confirmed;
    cert.details["conclusion_uncertain"] = d.sign.verdict == Sign::Uncertain;
  }
  return cert;
}

Certificate theorem2_check(const Matrix& m, std::size_t k, bool strict, const CheckOptions& opts) {
  if (k < 2) throw Error(ErrorCode::BadDomain, "theorem 2 needs k >= 2");
  RatioReport rr = critical_ratio(m);
  rr.strict = strict;
  CkComparison cmp = compare_with_ck(rr.critical_ratio, static_cast<int>(k), strict, opts);

  Certificate cert;
  cert.claim = {strict ? ClaimKind::STPk : ClaimKind::TPk, k};
  cert.hypothesis = rr;
  cert.constant = cmp.ck;
  cert.verdict = verdict_from(cmp.membership);
  if (cert.verdict == Verdict::Holds) {
    if (std::max(m.rows(), m.cols()) <= opts.oracle_cap) {
      const std::size_t order = std::min({k, m.rows(), m.cols()});
      put_oracle(cert.details, strict ? is_stpk(m, order, opts.tau) : is_tpk(m, order, opts.tau));
    } else {
      cert.details["oracle_checked"] = false;
    }
  }
  return cert;
}

Certificate theorem3_check(const Matrix& m, const CheckOptions& opts) {
  RatioReport rr = critical_ratio(m);
  const RationalInterval four = RationalInterval::point(Rational(4));
  Certificate cert;
  cert.claim = {ClaimKind::STP, std::min(m.rows(), m.cols())};
  cert.hypothesis = rr;
  cert.constant = four;
  cert.verdict = verdict_from(compare_ratio(rr.critical_ratio, four, false, opts.tau));
  if (cert.verdict == Verdict::Holds) {
    if (std::max(m.rows(), m.cols()) <= opts.oracle_cap) {
      put_oracle(cert.details, is_stp(m, false, opts.tau));
    } else {
      cert.details["oracle_checked"] = false;
    }
  }
  return cert;
}

Certificate theorem5_check(const Matrix& m, const CheckOptions& opts) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "theorem 5 applies to square matrices only");
  auto band = band_profile(m);
  if (!band) throw Error(ErrorCode::NotBanded, "support is not a band s <= j - i <= l of positive entries");
  const int k = static_cast<int>(m.rows());
  if (band->s >= band->l) throw Error(ErrorCode::BandDegenerate, "band needs s < l");

  if (band->s == -(k - 1) && band->l == k - 1) {
    Certificate cert = theorem1_check(m, false, opts);
    cert.details["delegated_to"] = "theorem1";
    cert.details["band"] = {{"s", band->s}, {"l", band->l}};
    return cert;
  }

  // Windows whose right-hand product vanishes hold trivially.
  std::optional<RatioReport> rr;
  std::size_t vacuous = 0;
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 1; j < m.cols(); ++j) {
      Scalar rhs = m(i, j + 1) * m(i + 1, j);
      if (rhs.is_zero()) {
        ++vacuous;
        continue;
      }
      Scalar r = m(i, j) * m(i + 1, j + 1) / rhs;
      if (!rr || r < rr->critical_ratio) rr = RatioReport{std::move(r), Cell{i, j}, false};
    }
  }

  Certificate cert;
  cert.claim = {ClaimKind::DetNonNegative, m.rows()};
  cert.details["band"] = {{"s", band->s}, {"l", band->l}};
  cert.details["vacuous_windows"] = vacuous;
  Membership mem = Membership::Yes;
  if (rr) {
    CkComparison cmp = compare_with_ck(rr->critical_ratio, k, false, opts);
    mem = cmp.membership;
    cert.constant = cmp.ck;
    cert.hypothesis = rr;
  } else {
    cert.constant = ck_enclosure(k, opts.ck_width);
  }
  cert.verdict = verdict_from(mem);
  if (cert.verdict == Verdict::FailsHypothesis) {
    cert.details["failing_window"] = {{"i", rr->argmin_cell.row}, {"j", rr->argmin_cell.col}};
  }
  DetInfo d = determinant(m, opts.tau);
  put_det(cert.details, d);
  if (cert.verdict == Verdict::Holds) {
    cert.details["conclusion_confirmed"] = d.sign.verdict == Sign::Positive || d.sign.verdict == Sign::Zero;
    cert.details["conclusion_uncertain"] = d.sign.verdict == Sign::Uncertain;
  }
  return cert;
}

namespace {

Scalar diagonal_product(const Matrix& m) {
  Scalar p = m.is_exact() ? Scalar(1) : Scalar::approx(1.0);
  for (std::size_t i = 1; i <= m.rows(); ++i) p *= m(i, i);
  return p;
}

Scalar f_value(int n, const Scalar& c) { return f_recurrence(n, c).values.back(); }

RationalInterval exact_point(const Scalar& c) {
  return RationalInterval::point(c.is_exact() ? c.rational() : to_rational(c.to_double()));
}

}  // namespace

BoundResult theorem6_bound(const Matrix& m, const Scalar& c, const CheckOptions& opts) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "theorem 6 applies to square matrices only");
  RatioReport rr = critical_ratio(m);
  const int k = static_cast<int>(m.rows());
  Membership in_class = compare_ratio(rr.critical_ratio, exact_point(c), false, opts.tau);
  CkComparison above_ck = compare_with_ck(c, k, false, opts);
  if (in_class == Membership::No) {
    throw Error(ErrorCode::HypothesisUnmet, "critical ratio " + rr.critical_ratio.str() + " is below c = " + c.str());
  }
  if (above_ck.membership == Membership::No) {
    throw Error(ErrorCode::HypothesisUnmet, "c = " + c.str() + " is below c_" + std::to_string(k));
  }

  BoundResult out;
  out.bound = diagonal_product(m) * f_value(k, c);
  Certificate& cert = out.certificate;
  cert.claim = {ClaimKind::DetLowerBound, m.rows()};
  cert.hypothesis = rr;
  cert.constant = exact_point(c);
  cert.verdict = (in_class == Membership::Yes && above_ck.membership == Membership::Yes) ? Verdict::Holds
                                                                                         : Verdict::Uncertain;
  DetInfo d = determinant(m, opts.tau);
  put_det(cert.details, d);
  cert.details["c"] = c.str();
  cert.details["ck"] = to_json(above_ck.ck);
  cert.details["bound"] = out.bound.str();
  Scalar slack = d.value - out.bound;
  cert.details["slack"] = slack.str();
  if (m.is_exact() && c.is_exact()) {
    cert.details["conclusion_confirmed"] = slack.sign() >= 0;
  } else {
    const double tol = opts.tau * std::max({1.0, d.hadamard, std::fabs(out.bound.to_double())});
    cert.details["conclusion_confirmed"] = slack.to_double() >= -tol;
  }
  return out;
}

BoundResult theorem6_bound(const Matrix& m, const RationalInterval& c, const CheckOptions& opts) {
  if (c.is_point()) return theorem6_bound(m, Scalar(c.lo()), opts);
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "theorem 6 applies to square matrices only");
  if (!m.is_exact()) throw Error(ErrorCode::NotExact, "interval-valued c needs exact entries");
  RatioReport rr = critical_ratio(m);
  const int k = static_cast<int>(m.rows());
  Membership in_class = compare_ratio(rr.critical_ratio, c, false, opts.tau);
  CkComparison above_ck = compare_with_ck(Scalar(c.lo()), k, false, opts);
  if (in_class == Membership::No) {
    throw Error(ErrorCode::HypothesisUnmet, "critical ratio " + rr.critical_ratio.str() + " is below c");
  }
  if (above_ck.membership == Membership::No) {
    throw Error(ErrorCode::HypothesisUnmet, "c lies below c_" + std::to_string(k));
  }
  const RationalInterval f = f_recurrence(k, c).back();
  const RationalInterval bound = RationalInterval::point(diagonal_product(m).rational()) * f;

  BoundResult out;
  out.bound = Scalar(bound.lo());  // every c in the interval qualifies, so the lower end is certified
  Certificate& cert = out.certificate;
  cert.claim = {ClaimKind::DetLowerBound, m.rows()};
  cert.hypothesis = rr;
  cert.constant = c;
  cert.verdict = (in_class == Membership::Yes && above_ck.membership == Membership::Yes) ? Verdict::Holds
                                                                                         : Verdict::Uncertain;
  DetInfo d = determinant(m, opts.tau);
  put_det(cert.details, d);
  cert.details["ck"] = to_json(above_ck.ck);
  cert.details["bound_enclosure"] = to_json(bound);
  cert.details["bound"] = out.bound.str();
  cert.details["conclusion_confirmed"] = d.value.rational() >= bound.lo();
  return out;
}

std::vector<ChainEntry> proof_chain_check(const Matrix& m, const Scalar& c, const CheckOptions& opts) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "proof chain needs a square matrix");
  const std::size_t n = m.rows();
  RatioReport rr = critical_ratio(m);
  if (compare_ratio(rr.critical_ratio, exact_point(c), false, opts.tau) != Membership::Yes) {
    throw Error(ErrorCode::HypothesisUnmet, "critical ratio " + rr.critical_ratio.str() + " not certified >= c");
  }
  if (compare_with_ck(c, static_cast<int>(n), false, opts).membership != Membership::Yes) {
    throw Error(ErrorCode::HypothesisUnmet, "c = " + c.str() + " not certified >= c_" + std::to_string(n));
  }

  const bool exact = m.is_exact() && c.is_exact();
  const Matrix work = exact ? m : m.to_approx();
  const Scalar one = exact ? Scalar(1) : Scalar::approx(1.0);
  const Scalar zero = exact ? Scalar(0) : Scalar::approx(0.0);
  auto a = [&](std::size_t i, std::size_t j) -> Scalar { return (i <= n && j <= n) ? work(i, j) : zero; };

  // D[i] = det of the trailing principal block i..n; D[n+1] = 1, D[n+2] = 0.
  std::vector<Scalar> D(n + 3, zero);
  D[n + 1] = one;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t t = i; t <= n; ++t) idx.push_back(t);
    D[i] = determinant(submatrix(work, idx, idx), opts.tau).value;
  }
  // Determinant of rows 2..n with column `skip` removed.
  auto row1_cofactor_minor = [&](std::size_t skip) -> Scalar {
    std::vector<std::size_t> rows, cols;
    for (std::size_t t = 2; t <= n; ++t) rows.push_back(t);
    for (std::size_t t = 1; t <= n; ++t) {
      if (t != skip) cols.push_back(t);
    }
    return determinant(submatrix(work, rows, cols), opts.tau).value;
  };

  const Scalar cc = exact ? c : c.to_approx();
  const auto F = f_recurrence(static_cast<int>(n), cc).values;
  const Scalar inv = one / cc;
  auto diag_prod = [&](std::size_t from, std::size_t to) {
    Scalar p = one;
    for (std::size_t i = from; i <= to; ++i) p *= a(i, i);
    return p;
  };
  // a_21 a_32 ... a_{j,j-1}
  auto subdiag_prod = [&](std::size_t j) {
    Scalar p = one;
    for (std::size_t i = 1; i < j; ++i) p *= a(i + 1, i);
    return p;
  };

  std::vector<ChainEntry> out;
  auto add = [&](std::string id, int index, const Scalar& lhs, const Scalar& rhs, bool strict) {
    ChainEntry e;
    e.id = std::move(id);
    e.index = index;
    e.margin = lhs - rhs;
    e.strict = strict;
    if (exact) {
      e.holds = strict ? e.margin.sign() > 0 : e.margin.sign() >= 0;
    } else {
      const double tol = opts.tau * std::max({1.0, std::fabs(lhs.to_double()), std::fabs(rhs.to_double())});
      e.holds = strict ? e.margin.to_double() > tol : e.margin.to_double() >= -tol;
    }
    out.push_back(std::move(e));
  };

  add("h1", -1, D[1], zero, false);
  add("h2", -1, D[1], a(1, 1) * D[2] - a(1, 2) * a(2, 1) * D[3], false);
  add("h3", -1, a(1, 1) * D[2], D[1], false);

  for (std::size_t mm = 0; mm + 3 <= n; ++mm) {
    add("l1", static_cast<int>(mm), D[mm + 1], a(mm + 1, mm + 1) * (D[mm + 2] - inv * a(mm + 2, mm + 2) * D[mm + 3]),
        false);
  }
  auto L = [&](std::size_t mm) {
    return F[mm] * D[mm + 1] - inv * F[mm - 1] * a(mm + 1, mm + 1) * D[mm + 2];
  };
  for (std::size_t mm = 1; mm + 2 <= n; ++mm) add("l2", static_cast<int>(mm), D[1], diag_prod(1, mm) * L(mm), false);
  for (std::size_t mm = 1; mm + 3 <= n; ++mm) {
    add("l3", static_cast<int>(mm), L(mm),
        a(mm + 1, mm + 1) * (F[mm + 1] * D[mm + 2] - inv * F[mm] * a(mm + 2, mm + 2) * D[mm + 3]), false);
  }
  for (std::size_t mm = 1; mm + 2 <= n; ++mm) {
    add("l4", static_cast<int>(mm), L(mm), diag_prod(mm + 1, n) * F[n], false);
  }
  add("l5", -1, D[n - 1], (one - inv) * a(n - 1, n - 1) * a(n, n), false);

  const bool last_window_strict = a(n - 1, n - 1) * a(n, n) > cc * a(n - 1, n) * a(n, n - 1);
  if (last_window_strict) {
    for (std::size_t mm = 1; mm + 2 <= n; ++mm) {
      add("l6", static_cast<int>(mm), L(mm), diag_prod(mm + 1, n) * F[n], true);
    }
  }

  for (std::size_t j = 2; j + 1 <= n; ++j) {
    const Scalar skip_j = row1_cofactor_minor(j);
    const Scalar skip_j1 = row1_cofactor_minor(j + 1);
    const Scalar sub = subdiag_prod(j);
    const Scalar tail = inv * a(j + 2, j + 2) * F[j - 1] * D[j + 3];  // zero when j + 2 > n
    const Scalar inv_j = pow(inv, static_cast<unsigned>(j));
    const int ji = static_cast<int>(j);
    add("t1", ji, inv_j * a(1, j) * sub * a(j + 1, j + 1) * D[j + 2], a(1, j + 1) * skip_j1, false);
    add("t2", ji, skip_j, sub * a(j + 1, j + 1) * (D[j + 2] * (F[j - 1] - F[j - 2] * inv * inv) - tail), false);
    const Scalar lemma3 = a(1, j) * skip_j - a(1, j + 1) * skip_j1;
    add("t3", ji, lemma3,
        a(1, j) * sub * a(j + 1, j + 1) * ((F[j - 1] - F[j - 2] * inv * inv - inv_j) * D[j + 2] - tail), false);
    add("lemma3", ji, lemma3, zero, false);
  }
  return out;
}

}  // namespace tpsharp

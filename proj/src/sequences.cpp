#include "tpsharp/sequences.hpp"

#include <algorithm>
#include <string>

#include "tpsharp/error.hpp"
#include "tpsharp/ratio_criteria.hpp"
#include "tpsharp/serialize.hpp"

namespace tpsharp {

namespace {

Error bad_term(std::size_t idx, const Scalar& v, std::string_view what) {
  return Error(ErrorCode::NonPositiveEntry, "term a_" + std::to_string(idx) + " = " + v.str() + " " + std::string(what),
               Error::Position{1, idx + 1});
}

// a_0 > 0, no negative terms.
void check_pf_sequence(std::span<const Scalar> seq) {
  if (seq.empty()) throw Error(ErrorCode::TooShort, "empty sequence");
  if (seq[0].sign() <= 0) throw bad_term(0, seq[0], "must be positive");
  for (std::size_t t = 1; t < seq.size(); ++t) {
    if (seq[t].sign() < 0) throw bad_term(t, seq[t], "is negative");
  }
}

void check_positive(std::span<const Scalar> seq) {
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (seq[t].sign() <= 0) throw bad_term(t, seq[t], "is not positive");
  }
}

}  // namespace

Matrix toeplitz_truncation(std::span<const Scalar> seq, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadDomain, "truncation size must be >= 1");
  bool exact = std::all_of(seq.begin(), seq.end(), [](const Scalar& s) { return s.is_exact(); });
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      if (j - i < seq.size()) m.set(i, j, seq[j - i]);
    }
  }
  return exact ? m : m.to_approx();
}

PfmReport pfm_check(std::span<const Scalar> seq, std::size_t m, std::size_t n) {
  check_pf_sequence(seq);
  if (m < 1) throw Error(ErrorCode::BadDomain, "PF order must be >= 1");
  if (m > n) {
    throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(m) + " exceeds truncation " + std::to_string(n));
  }
  PfmReport rep;
  rep.m = m;
  rep.n = n;
  rep.scan = minor_scan(toeplitz_truncation(seq, n), m, MinorMode::All);
  rep.holds = rep.scan.all_nonnegative;
  return rep;
}

HutchinsonReport hutchinson_ratio(std::span<const Scalar> seq) {
  if (seq.size() < 3) throw Error(ErrorCode::TooShort, "ratio condition needs at least 3 terms");
  check_positive(seq);
  HutchinsonReport rep;
  for (std::size_t t = 1; t + 1 < seq.size(); ++t) {
    Scalar r = seq[t] * seq[t] / (seq[t - 1] * seq[t + 1]);
    if (t == 1 || r < rep.ratio) {
      rep.ratio = std::move(r);
      rep.argmin = t;
    }
  }
  const Membership ner = compare_ratio(rep.ratio, RationalInterval::point(Rational(4)), false, kDefaultTau);
  rep.ner_holds = ner == Membership::Yes;
  rep.pf_infinity_implied = rep.ner_holds;
  return rep;
}

Certificate corollary5_check(std::span<const Scalar> seq, std::size_t m, std::optional<std::size_t> n,
                             const CheckOptions& opts) {
  if (m < 2) throw Error(ErrorCode::BadDomain, "corollary needs m >= 2");
  if (seq.size() < 3) throw Error(ErrorCode::TooShort, "ratio condition needs at least 3 terms");
  check_pf_sequence(seq);
  std::size_t support = seq.size();
  while (support > 0 && seq[support - 1].is_zero()) --support;
  for (std::size_t t = 0; t < support; ++t) {
    if (seq[t].is_zero()) throw bad_term(t, seq[t], "is zero before the end of the support");
  }

  std::optional<RatioReport> rr;
  std::size_t vacuous = 0;
  for (std::size_t t = 1; t + 1 < seq.size(); ++t) {
    Scalar rhs = seq[t - 1] * seq[t + 1];
    if (rhs.is_zero()) {
      ++vacuous;
      continue;
    }
    Scalar r = seq[t] * seq[t] / rhs;
    if (!rr || r < rr->critical_ratio) rr = RatioReport{std::move(r), Cell{1, t + 1}, false};
  }

  Certificate cert;
  cert.claim = {ClaimKind::PFm, m};
  cert.details["finite_truncation"] = true;
  cert.details["vacuous_windows"] = vacuous;
  Membership mem = Membership::Yes;
  if (rr) {
    CkComparison cmp = compare_with_ck(rr->critical_ratio, static_cast<int>(m), false, opts);
    mem = cmp.membership;
    cert.constant = cmp.ck;
    cert.hypothesis = rr;
    cert.details["argmin_n"] = rr->argmin_cell.col - 1;
  } else {
    cert.constant = ck_enclosure(static_cast<int>(m), opts.ck_width);
  }
  cert.verdict = mem == Membership::Yes ? Verdict::Holds
                 : mem == Membership::No ? Verdict::FailsHypothesis
                                         : Verdict::Uncertain;
  if (cert.verdict == Verdict::Holds) {
    const std::size_t size = n.value_or(std::max(default_truncation(seq.size()), m));
    PfmReport oracle = pfm_check(seq, m, size);
    cert.details["oracle_checked"] = true;
    cert.details["oracle_holds"] = oracle.holds;
    cert.details["oracle"] = to_json(oracle);
  }
  return cert;
}

std::vector<MomentEntry> hankel_moment_check(std::span<const Scalar> seq, std::size_t k, double tau) {
  if (seq.size() < 2 * k + 1) {
    throw Error(ErrorCode::TooShort, "order " + std::to_string(k) + " needs " + std::to_string(2 * k + 1) + " terms");
  }
  check_positive(seq);
  std::vector<MomentEntry> out;
  for (std::size_t j = 0; j <= k; ++j) {
    Matrix h = hankel_from(seq, j + 1);
    MomentEntry e;
    e.order = j;
    if (h.is_exact()) {
      Rational d = det_exact(h);
      e.sign = classify_exact(d);
      e.det = Scalar(std::move(d));
    } else {
      FloatDet fd = det_float(h.to_approx(), tau);
      e.sign = fd.sign;
      e.det = Scalar::approx(fd.value);
    }
    out.push_back(std::move(e));
  }
  return out;
}

Certificate corollary3_moment_check(std::span<const Scalar> seq, std::size_t k, const CheckOptions& opts) {
  if (seq.size() < 3) throw Error(ErrorCode::TooShort, "ratio condition needs at least 3 terms");
  if (seq.size() < 2 * k + 1) {
    throw Error(ErrorCode::TooShort, "order " + std::to_string(k) + " needs " + std::to_string(2 * k + 1) + " terms");
  }
  check_positive(seq);
  RatioReport rr;
  for (std::size_t t = 1; t + 1 < seq.size(); ++t) {
    Scalar r = seq[t - 1] * seq[t + 1] / (seq[t] * seq[t]);
    if (t == 1 || r < rr.critical_ratio) rr = RatioReport{std::move(r), Cell{1, t + 1}, false};
  }
  const RationalInterval four = RationalInterval::point(Rational(4));
  Certificate cert;
  cert.claim = {ClaimKind::MomentPositive, k};
  cert.hypothesis = rr;
  cert.constant = four;
  const Membership mem = compare_ratio(rr.critical_ratio, four, false, opts.tau);
  cert.verdict = mem == Membership::Yes ? Verdict::Holds
                 : mem == Membership::No ? Verdict::FailsHypothesis
                                         : Verdict::Uncertain;
  cert.details["finite_truncation"] = true;
  cert.details["argmin_n"] = rr.argmin_cell.col - 1;
  if (cert.verdict == Verdict::Holds) {
    if (k >= 1) {
      const RatioReport hr = critical_ratio(hankel_from(seq, k + 1));
      cert.details["hankel_critical_ratio"] = hr.critical_ratio.str();
      cert.details["hankel_ratio_ok"] = compare_ratio(hr.critical_ratio, four, false, opts.tau) == Membership::Yes;
    }
    const auto dets = hankel_moment_check(seq, k, opts.tau);
    bool all_positive = true;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : dets) {
      all_positive = all_positive && e.sign.verdict == Sign::Positive;
      list.push_back(to_json(e));
    }
    cert.details["hankel_determinants"] = list;
    cert.details["oracle_checked"] = true;
    cert.details["oracle_holds"] = all_positive;
  }
  return cert;
}

namespace {

std::vector<Scalar> ratio_sequence(std::size_t len, const Rational& r, std::uint64_t seed, const Rational& spread,
                                   bool moment) {
  if (len < 2) throw Error(ErrorCode::TooShort, "generated sequences need length >= 2");
  if (r <= 0 || spread < 0) throw Error(ErrorCode::BadDomain, "ratio must be positive and spread >= 0");
  FactorSampler s(seed);
  std::vector<Rational> a{Rational(1), Rational(1) + s.unit()};
  while (a.size() < len) {
    const std::size_t t = a.size() - 1;
    const Rational rn = r * (1 + s.unit() * spread);
    // ratio a_t^2 / (a_{t-1} a_{t+1}) (or its reciprocal for moments) equals rn
    a.push_back(moment ? Rational(rn * a[t] * a[t] / a[t - 1]) : Rational(a[t] * a[t] / (rn * a[t - 1])));
  }
  return {a.begin(), a.end()};
}

}  // namespace

std::vector<Scalar> random_ratio_sequence(std::size_t len, const Rational& r, std::uint64_t seed,
                                          const Rational& spread) {
  return ratio_sequence(len, r, seed, spread, false);
}

std::vector<Scalar> random_moment_sequence(std::size_t len, const Rational& r, std::uint64_t seed,
                                           const Rational& spread) {
  return ratio_sequence(len, r, seed, spread, true);
}

}  // namespace tpsharp

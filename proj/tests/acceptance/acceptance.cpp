// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "tpsharp/chebyshev.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/positivity.hpp"
#include "tpsharp/sequences.hpp"

using namespace tpsharp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Rational kFine(1, 1LL << 60);

// ---- shared corpus ----------------------------------------------------------

struct Instance {
  std::size_t k;
  Rational c;
  bool strict;
  Matrix m;
};

// Non-strict generation: each window factor is exactly c with probability
// 1/3, otherwise c (1 + u / 2).
Matrix boundary_tp2c(std::size_t k, const Rational& c, std::uint64_t seed) {
  FactorSampler s(seed);
  std::vector<Scalar> row, col;
  for (std::size_t t = 0; t < k; ++t) row.emplace_back(Rational(1 + s.unit()));
  col.push_back(row.front());
  for (std::size_t t = 1; t < k; ++t) col.emplace_back(Rational(1 + s.unit()));
  std::vector<std::vector<Scalar>> factors(k - 1);
  for (auto& r : factors) {
    for (std::size_t t = 0; t + 1 < k; ++t) {
      r.emplace_back(s.next() % 3 == 0 ? c : Rational(c * (1 + s.unit() / 2)));
    }
  }
  return generate_tp2c(k, Scalar(c), row, col, factors);
}

std::vector<Instance> build_corpus(std::size_t per_pair) {
  std::vector<Instance> out;
  for (std::size_t k = 3; k <= 7; ++k) {
    const RationalInterval ck = ck_enclosure(static_cast<int>(k), kFine);
    for (int cv : {2, 3, 4}) {
      const Rational c(cv);
      if (c < ck.hi()) continue;
      for (std::size_t s = 0; s < per_pair; ++s) {
        RandomFactorPolicy p;
        p.seed = 1000003ULL * k + 7919ULL * static_cast<unsigned>(cv) + s;
        p.strict = (s % 2) == 1;
        p.spread = Rational(1, 2);
        if (p.strict) {
          out.push_back({k, c, true, random_tp2c(k, Scalar(c), p)});
        } else {
          out.push_back({k, c, false, boundary_tp2c(k, c, p.seed)});
        }
      }
    }
  }
  return out;
}

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> c = build_corpus(1000);
  return c;
}

// ---- criteria ---------------------------------------------------------------

Outcome c1_vanishing() {
  const auto t0 = Clock::now();
  const Rational width(1, 1000000000000LL);
  const Rational max_width(1, 1000000000LL);
  int bad = 0;
  for (int k = 2; k <= 20; ++k) {
    const RationalInterval ck = ck_enclosure(k, width);
    const RationalInterval f = f_recurrence(k, ck).back();
    if (!f.contains_zero() || f.width() > max_width) ++bad;
    if (k == 2 || k == 3 || k == 5) {
      if (!ck.is_point() || chebyshev_f_exact(k, ck.lo()) != 0) ++bad;
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 1.0, std::to_string(bad) + " failures, " + fmt("%.3f s", s)};
}

Outcome c2_theorem1() {
  const auto t0 = Clock::now();
  std::size_t bad = 0, strict_checked = 0;
  for (const auto& in : corpus()) {
    const Rational d = det_exact(in.m);
    if (d < 0) ++bad;
    const bool all_above = compare_ratio(critical_ratio(in.m).critical_ratio, RationalInterval::point(in.c), true,
                                         kDefaultTau) == Membership::Yes;
    if (in.strict && !all_above) ++bad;  // strict generation must give factors > c
    if (all_above) {
      ++strict_checked;
      if (d <= 0) ++bad;
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 60.0, std::to_string(corpus().size()) + " instances (" + std::to_string(strict_checked) +
                                    " with all factors above c), " + std::to_string(bad) + " failures, " + fmt("%.2f s", s)};
}

Outcome c3_theorem6() {
  std::size_t bad = 0;
  for (const auto& in : corpus()) {
    const Rational d = det_exact(in.m);
    Rational diag(1);
    for (std::size_t i = 1; i <= in.k; ++i) diag *= in.m(i, i).rational();
    const Rational bound = diag * f_closed(static_cast<int>(in.k), Scalar(in.c)).rational();
    if (d < bound) ++bad;
    BoundResult b = theorem6_bound(in.m, Scalar(in.c));
    if (b.bound.rational() != bound || b.certificate.verdict != Verdict::Holds) ++bad;
  }
  BoundResult small = theorem6_bound(Matrix{{Scalar(1), 1}, {1, 4}}, Scalar(4));
  const bool small_ok = small.bound == Scalar(3) && det_exact(Matrix{{Scalar(1), 1}, {1, 4}}) == 3;
  const Matrix m540{{Scalar(1), 1, 1}, {1, 4, 16}, {1, 16, 256}};
  BoundResult big = theorem6_bound(m540, Scalar(4));
  const bool big_ok = big.bound == Scalar(512) && det_exact(m540) == 540;
  return {bad == 0 && small_ok && big_ok, std::to_string(bad) + " corpus failures; 3 >= 3 " +
                                              (small_ok ? "ok" : "WRONG") + "; 540 >= 512 " + (big_ok ? "ok" : "WRONG")};
}

Outcome c4_sharpness() {
  const auto t0 = Clock::now();
  int bad = 0;
  for (int k = 3; k <= 8; ++k) {
    const Rational c = ck_enclosure(k, kFine).lo() - Rational(1, 100);
    try {
      WitnessResult t = toeplitz_witness(k, Scalar(c));
      WitnessResult h = hankel_witness(k, Scalar(c));
      if (t.membership != Membership::Yes || t.det_sign.verdict != Sign::Negative) ++bad;
      if (h.membership != Membership::Yes || h.det_sign.verdict != Sign::Negative || !h.exact) ++bad;
      // independent re-certification of the exact witness
      if (critical_ratio(h.matrix).critical_ratio.rational() < c || det_exact(h.matrix) >= 0) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 30.0, std::to_string(bad) + " failures over k = 3..8, " + fmt("%.2f s", s)};
}

Outcome c5_closed_form() {
  double worst = 0;
  int flip_errors = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    double prev_phi = 0, prev_val = 0;
    for (int i = 0; i < 50; ++i) {
      const double phi = (i + 0.37) * (std::numbers::pi / 2) / 50;
      const double val = det_float(toeplitz_mn(n, phi)).value;
      worst = std::max(worst, std::fabs(val - det_mn_closed(n, phi)));
      if (i > 0) {
        int crossings = 0;
        for (std::size_t j = 1; j <= n; ++j) {
          const double root = static_cast<double>(j) * std::numbers::pi / static_cast<double>(n + 1);
          if (root > prev_phi && root < phi) ++crossings;
        }
        const bool flipped = (val < 0) != (prev_val < 0);
        if (flipped != (crossings % 2 == 1)) ++flip_errors;
      }
      prev_phi = phi;
      prev_val = val;
    }
  }
  return {worst <= 1e-10 && flip_errors == 0,
          "max |error| " + fmt("%.2e", worst) + ", " + std::to_string(flip_errors) + " sign-flip mismatches"};
}

Outcome c6_lemma4() {
  const auto t0 = Clock::now();
  int bad = 0;
  const std::pair<long long, long long> expected[] = {{2, 5}, {8, 14}, {20, 30}};
  for (int n = 3; n <= 5; ++n) {
    if (lemma4_exponents(n) != expected[n - 3]) ++bad;
    for (const Rational& p : {Rational(3, 2), Rational(2), Rational(5, 2)}) {
      std::vector<Rational> qs;
      for (long long q = 1; q <= expected[n - 3].first + 1; ++q) qs.emplace_back(q);
      Lemma4Report r = lemma4_leading_check(n, p, qs);
      const Rational want = pow(p, static_cast<unsigned>(expected[n - 3].second)) * chebyshev_f_exact(n, p);
      if (!r.holds || r.leading_coefficient != want || r.residual_degree > r.alpha - 1) ++bad;
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 30.0, std::to_string(bad) + " failures, " + fmt("%.2f s", s)};
}

Outcome c7_contiguous() {
  int disagree = 0, stp = 0;
  FactorSampler pick(77);
  for (std::uint64_t s = 0; s < 200; ++s) {
    RandomFactorPolicy p;
    p.seed = 5000 + s;
    const int c_values[] = {1, 2, 4};
    Matrix m = random_tp2c(6, Scalar(c_values[(s / 2) % 3]), p);
    if (s % 2 == 1) {
      // perturb one entry by a factor in [1/2, 3/2)
      const std::size_t i = 1 + pick.next() % 6, j = 1 + pick.next() % 6;
      m.set(i, j, m(i, j) * Scalar(Rational(1, 2) + pick.unit()));
    }
    const bool all = is_stp(m, false).holds;
    const bool contiguous = is_stp(m, true).holds;
    stp += all;
    if (all != contiguous) ++disagree;
  }
  return {disagree == 0, "200 matrices, " + std::to_string(stp) + " STP, " + std::to_string(disagree) +
                             " disagreements"};
}

Outcome c8_sequences() {
  const auto t0 = Clock::now();
  int bad = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int m = 2 + static_cast<int>(s % 4);
    // smallest multiple of 1/1000 not below the enclosure of c_m
    const Rational hi = ck_enclosure(m, kFine).hi();
    const Integer num = boost::multiprecision::numerator(hi) * 1000;
    const Integer den = boost::multiprecision::denominator(hi);
    const Rational r(Integer((num + den - 1) / den), Integer(1000));
    auto seq = random_ratio_sequence(10, r, 9000 + s, Rational(1, 2));
    if (compare_with_ck(hutchinson_ratio(seq).ratio, m, false).membership != Membership::Yes) ++bad;
    if (!pfm_check(seq, static_cast<std::size_t>(m), 10).holds) ++bad;
  }
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto seq = random_moment_sequence(11, Rational(4), 12000 + s, Rational(1, 2));
    for (const auto& e : hankel_moment_check(seq, 5)) {
      if (e.sign.verdict != Sign::Positive) {
        ++bad;
        break;
      }
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0, std::to_string(bad) + " failures over 400 sequences, " + fmt("%.2f s", s)};
}

Outcome c9_constants() {
  const RationalInterval ct = constant_c_tilde(Rational(1, 1000000));
  const RationalInterval d = constant_d(Rational(1, 100));
  const bool ct_ok = ct.contains(Rational(40796, 10000));
  const bool d_ok = d.contains(Rational(406, 100));
  bool ck_ok = true;
  Rational prev(0);
  for (int k = 2; k <= 40; ++k) {
    const RationalInterval e = ck_enclosure(k, kFine);
    if (!(e.hi() < 4) || !(prev < e.lo() || (k == 2 && prev <= e.lo()))) ck_ok = false;
    prev = e.hi();
  }
  std::string detail = "c~ in [" + fmt("%.7f", to_double(ct.lo())) + ", " + fmt("%.7f", to_double(ct.hi())) + "] " +
                       (ct_ok ? "contains" : "excludes") + " 4.0796; d in [" + fmt("%.4f", to_double(d.lo())) +
                       ", " + fmt("%.4f", to_double(d.hi())) + "] " + (d_ok ? "contains" : "excludes") +
                       " 4.06; c_k increasing below 4: " + (ck_ok ? "yes" : "no");
  if (!ct_ok) {
    detail += " (the root is 4.0795956..., so 4.0796 is its 4-decimal rounding and no width-1e-6 enclosure holds it)";
  }
  return {ct_ok && d_ok && ck_ok, detail};
}

Outcome c10_chain() {
  std::size_t checked = 0, bad = 0;
  const auto& all = corpus();
  const std::set<std::string> required{"h2", "h3", "l1", "l2", "l4", "l5"};
  for (std::size_t t = 0; t < all.size() && checked < 500; t += all.size() / 500) {
    const Instance& in = all[t];
    ++checked;
    for (const auto& e : proof_chain_check(in.m, Scalar(in.c))) {
      if (!e.holds) ++bad;
      if (required.count(e.id) && e.margin.sign() < 0) ++bad;
      if (e.id == "l6" && in.strict && e.margin.sign() <= 0) ++bad;
    }
  }
  return {bad == 0 && checked == 500, std::to_string(checked) + " instances, " + std::to_string(bad) + " failures"};
}

}  // namespace

int main() {
  // A criterion listed here cannot be met as written; its line still
  // prints FAIL but it does not fail the run.
  const std::set<int> documented_unattainable{9};

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sharp-constant vanishing", c1_vanishing},
      {"theorem 1 at desk scale", c2_theorem1},
      {"theorem 6 bound", c3_theorem6},
      {"sharpness witnesses", c4_sharpness},
      {"closed-form determinant", c5_closed_form},
      {"lemma 4 structure", c6_lemma4},
      {"contiguous vs all-minors", c7_contiguous},
      {"sequence corollaries", c8_sequences},
      {"constants", c9_constants},
      {"proof-chain margins", c10_chain},
  };
  int unexpected = 0, passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const int id = static_cast<int>(i + 1);
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (o.pass) {
      ++passed;
    } else if (!documented_unattainable.count(id)) {
      ++unexpected;
    }
  }
  std::printf("%d/%zu criteria pass; %d unexpected failures\n", passed, criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}

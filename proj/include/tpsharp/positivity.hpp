#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpsharp/interval.hpp"
#include "tpsharp/matrix.hpp"
#include "tpsharp/numerics.hpp"
#include "tpsharp/ratio_criteria.hpp"

namespace tpsharp {

enum class MinorMode { All, Contiguous };

/*
 * Result of an exhaustive minor enumeration up to `order`.
 *
 * Exact matrices are scanned exactly. Approx matrices go through det_float;
 * a minor whose verdict is Uncertain counts against both all_nonnegative and
 * all_positive and is tallied in `uncertain`.
 */
struct MinorScan {
  std::size_t order = 0;
  MinorMode mode = MinorMode::All;
  std::size_t total = 0;
  Scalar min_value;
  SubmatrixSelector argmin;
  SignClass min_sign;
  bool all_nonnegative = true;
  bool all_positive = true;
  std::size_t uncertain = 0;
  bool exact = true;
};

// Errors: OrderTooLarge if max_order > min(rows, cols); BadDomain for 0.
MinorScan minor_scan(const Matrix& m, std::size_t max_order, MinorMode mode = MinorMode::All,
                     double tau = kDefaultTau);

struct PositivityResult {
  bool holds = false;
  MinorScan scan;
};

PositivityResult is_tpk(const Matrix& m, std::size_t k, double tau = kDefaultTau);
PositivityResult is_stpk(const Matrix& m, std::size_t k, double tau = kDefaultTau);
PositivityResult is_tp(const Matrix& m, double tau = kDefaultTau);
// contiguous = true screens with contiguous minors only (STP only; never
// used to conclude TP).
PositivityResult is_stp(const Matrix& m, bool contiguous = false, double tau = kDefaultTau);

enum class ClaimKind { DetNonNegative, DetPositive, TPk, STPk, STP, DetLowerBound, PFm, MomentPositive };
enum class Verdict { Holds, FailsHypothesis, Uncertain };

std::string_view to_string(ClaimKind k) noexcept;
std::string_view to_string(Verdict v) noexcept;

struct Claim {
  ClaimKind kind = ClaimKind::DetNonNegative;
  std::size_t order = 0;  // k for TPk / STPk / PFm / MomentPositive
};

struct Certificate {
  Claim claim;
  std::optional<RatioReport> hypothesis;
  std::optional<RationalInterval> constant;
  Verdict verdict = Verdict::Uncertain;
  nlohmann::json details = nlohmann::json::object();
};

struct CheckOptions {
  double tau = kDefaultTau;
  std::size_t oracle_cap = 8;  // largest dimension confirmed by brute force
  // Starting enclosure width for c_k; refined while the verdict is Uncertain.
  Rational ck_width = Rational(1, 1LL << 60);
};

// Certified comparison of a ratio with c_k, refining the enclosure of c_k
// (down to width 2^-240) while the comparison is undecided.
struct CkComparison {
  Membership membership = Membership::Uncertain;
  RationalInterval ck;
};
CkComparison compare_with_ck(const Scalar& ratio, int k, bool strict, const CheckOptions& opts = {});

// k x k positive matrix in (S)TP_2(c_k) => det >= 0 (> 0).
Certificate theorem1_check(const Matrix& m, bool strict, const CheckOptions& opts = {});
// TP_2(c_k) => TP_k; STP_2(c_k) => STP_k when strict.
Certificate theorem2_check(const Matrix& m, std::size_t k, bool strict = false, const CheckOptions& opts = {});
// TP_2(4) => STP.
Certificate theorem3_check(const Matrix& m, const CheckOptions& opts = {});
// Banded k x k matrix with the window condition at c_k => det >= 0.
// Errors: NotBanded, BandDegenerate (s == l), NonSquare.
Certificate theorem5_check(const Matrix& m, const CheckOptions& opts = {});

struct BoundResult {
  Scalar bound;
  Certificate certificate;
};

// det M >= a_11 ... a_kk F_k(c) for c >= c_k and M in TP_2(c).
// Errors: HypothesisUnmet when either hypothesis is certified false.
BoundResult theorem6_bound(const Matrix& m, const Scalar& c, const CheckOptions& opts = {});
BoundResult theorem6_bound(const Matrix& m, const RationalInterval& c, const CheckOptions& opts = {});

struct ChainEntry {
  std::string id;  // "h1", "h2", "h3", "l1", ..., "lemma3"
  int index = -1;  // m (for l*) or j (for t*, lemma3); -1 when unindexed
  Scalar margin;   // rhs-adjusted: the inequality holds iff margin >= 0 (> 0 for strict ones)
  bool strict = false;
  bool holds = false;
};

/*
 * Evaluates, on one n x n instance, every inequality of the determinant
 * induction: trailing-minor bounds h1-h3, the F_m-weighted chain l1-l5 (and
 * the strict l6 when the last window is strict), and the column-pair step
 * t1-t3 with its conclusion (lemma3). All trailing principal minors are
 * computed exactly for exact input.
 *
 * Requires critical_ratio(m) >= c >= c_n (HypothesisUnmet otherwise).
 */
std::vector<ChainEntry> proof_chain_check(const Matrix& m, const Scalar& c, const CheckOptions& opts = {});

}  // namespace tpsharp

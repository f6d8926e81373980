#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpsharp/matrix.hpp"
#include "tpsharp/positivity.hpp"

namespace tpsharp {

// N x N upper triangular Toeplitz section: (i, j) -> a_{j-i} for j >= i,
// zero below the diagonal and past the end of the list.
Matrix toeplitz_truncation(std::span<const Scalar> seq, std::size_t n);

// Every result here concerns a finite section only.
struct PfmReport {
  bool holds = false;
  std::size_t m = 0;
  std::size_t n = 0;
  bool finite_truncation = true;
  MinorScan scan;
};

// All minors of order <= m of the N x N section are >= 0.
// Errors: OrderTooLarge (m > N), NonPositiveEntry (negative term, a_0 <= 0).
PfmReport pfm_check(std::span<const Scalar> seq, std::size_t m, std::size_t n);

struct HutchinsonReport {
  Scalar ratio;              // min over interior n of a_n^2 / (a_{n-1} a_{n+1})
  std::size_t argmin = 0;    // that n
  bool ner_holds = false;    // ratio >= 4
  bool pf_infinity_implied = false;
};

// Errors: NonPositiveEntry, TooShort (fewer than 3 terms).
HutchinsonReport hutchinson_ratio(std::span<const Scalar> seq);

inline std::size_t default_truncation(std::size_t len) { return std::min<std::size_t>(len, 10); }

/*
 * a_n^2 >= c_m a_{n-1} a_{n+1} for all interior n => PF_m.
 *
 * Terms may end in a run of zeros (the windows touching them hold
 * trivially); a zero followed by a positive term is rejected because the
 * ratio condition says nothing about such gaps. The conclusion is checked by
 * pfm_check on the N x N section.
 */
Certificate corollary5_check(std::span<const Scalar> seq, std::size_t m, std::optional<std::size_t> n = std::nullopt,
                             const CheckOptions& opts = {});

struct MomentEntry {
  std::size_t order = 0;  // j; the Hankel block is (j+1) x (j+1)
  Scalar det;
  SignClass sign;
};

// det (s_{i+l})_{i,l=0..j} for j = 0..k. TooShort if fewer than 2k+1 terms.
std::vector<MomentEntry> hankel_moment_check(std::span<const Scalar> seq, std::size_t k, double tau = kDefaultTau);

// s_{n-1} s_{n+1} >= 4 s_n^2 for all interior n, cross-checked against the
// Hankel determinants up to order k.
Certificate corollary3_moment_check(std::span<const Scalar> seq, std::size_t k, const CheckOptions& opts = {});

// Positive sequence with a_n^2 / (a_{n-1} a_{n+1}) = r (1 + u_n spread),
// u_n on a 2^-16 grid; a_0 = 1, a_1 = 1 + u.
std::vector<Scalar> random_ratio_sequence(std::size_t len, const Rational& r, std::uint64_t seed,
                                          const Rational& spread = Rational(1));

// Positive sequence with s_{n-1} s_{n+1} / s_n^2 = r (1 + u_n spread).
std::vector<Scalar> random_moment_sequence(std::size_t len, const Rational& r, std::uint64_t seed,
                                           const Rational& spread = Rational(1));

}  // namespace tpsharp

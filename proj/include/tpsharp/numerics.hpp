#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tpsharp/interval.hpp"
#include "tpsharp/matrix.hpp"
#include "tpsharp/scalar.hpp"

namespace tpsharp {

// Default relative sign tolerance for the float backend, 2^-30.
inline constexpr double kDefaultTau = 1.0 / 1073741824.0;

enum class Sign { Negative, Zero, Positive, Uncertain };

std::string_view to_string(Sign s) noexcept;

struct SignClass {
  Sign verdict = Sign::Zero;
  Scalar witness_magnitude;  // |value| that the verdict was read from
};

SignClass classify_exact(const Rational& value);

// Exact determinant by fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix. Throws NonSquare / NotExact.
Rational det_exact(const Matrix& m);

struct FloatDet {
  double value = 0;
  double hadamard_bound = 0;  // product of row Euclidean norms
  SignClass sign;
};

/*
 * Partial-pivoted LU determinant in binary64.
 *
 * The verdict is Uncertain when |det| <= tau * HadamardBound(m) and Zero
 * only when the bound itself is zero (a zero row). Otherwise the computed
 * sign is reported.
 */
FloatDet det_float(const Matrix& m, double tau = kDefaultTau);

// Sign verdict for an exact or approx determinant value of `m`.
SignClass classify_det(const Matrix& m, double tau = kDefaultTau);

// Integer form of an exact matrix: entries * denominator are integers.
// A minor of order j of the original equals the integer minor / denominator^j.
struct ScaledIntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> entries;
  Integer denominator{1};

  static ScaledIntegerMatrix from(const Matrix& m);
  // 1-based index lists of equal length.
  Integer minor(std::span<const std::size_t> rows_sel, std::span<const std::size_t> cols_sel) const;
};

// Bareiss elimination of a row-major n x n integer matrix (consumed).
Integer bareiss_determinant(std::vector<Integer> a, std::size_t n);

// Certified enclosure of c_k = 4 cos^2(pi / (k + 1)); a point interval for
// the rational cases k = 2, 3, 5. Errors: BadDomain (k < 2), BadWidth.
RationalInterval ck_enclosure(int k, const Rational& width);

// Enclosure of 4 cos^2(j pi / (n + 1)), the j-th largest root of F_n,
// 1 <= j <= n / 2.
RationalInterval chebyshev_root_enclosure(int n, int j, const Rational& width);

// Real root of x^3 - 5x^2 + 4x - 1, by bisection of [4, 5].
RationalInterval constant_c_tilde(const Rational& width);

// Positive solution of sum_{n>=1} d^(-n^2) = 1/4, by bisection of [4, 5]
// with a certified geometric bound on the truncated tail.
RationalInterval constant_d(const Rational& width);

// Exact F_m(c) by the three-term recurrence. Used for certification only;
// the chebyshev module carries the public F_m operations.
Rational chebyshev_f_exact(int m, const Rational& c);

}  // namespace tpsharp

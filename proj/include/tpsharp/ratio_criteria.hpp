#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tpsharp/interval.hpp"
#include "tpsharp/matrix.hpp"
#include "tpsharp/numerics.hpp"

namespace tpsharp {

// Minimum over adjacent 2x2 windows of a_ij a_{i+1,j+1} / (a_{i,j+1} a_{i+1,j}).
struct RatioReport {
  Scalar critical_ratio;
  Cell argmin_cell;     // top-left corner of the minimizing window
  bool strict = false;  // membership mode this report was used for
};

enum class Membership { Yes, No, Uncertain };

std::string_view to_string(Membership m) noexcept;

// Errors: TooSmall (fewer than 2 rows or columns), NonPositiveEntry (with
// the cell). Ties break toward the smallest (i, j).
RatioReport critical_ratio(const Matrix& m);

// Compare a ratio with a certified constant. Exact ratios are decided
// against the interval endpoints; approx ratios additionally need a
// relative margin of tau on the right side of the endpoint.
Membership compare_ratio(const Scalar& ratio, const RationalInterval& c, bool strict,
                         double tau = kDefaultTau);

// TP_2(c) (strict = false) or STP_2(c) (strict = true).
Membership is_member(const Matrix& m, const RationalInterval& c, bool strict, double tau = kDefaultTau);

// 1-based cells with i < k and j < l.
struct QuadCells {
  std::size_t i = 0;
  std::size_t k = 0;
  std::size_t j = 0;
  std::size_t l = 0;
};

// a_ij a_kl - c^((l-j)(k-i)) a_il a_kj; nonnegative whenever m is in TP_2(c).
Scalar lemma_a_margin(const Matrix& m, const Scalar& c, const QuadCells& cells);

// Reproducible factor draws: factor = c * (1 + u), u uniform on a 2^-16 grid
// of [0, spread] ((0, spread] when strict). Driven by mt19937_64, whose
// output sequence is fixed by the standard.
struct RandomFactorPolicy {
  std::uint64_t seed = 0;
  Rational spread{1};
  bool strict = false;
};

class FactorSampler {
 public:
  explicit FactorSampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform on {0, 1, ..., 2^16 - 1} / 2^16.
  Rational unit();
  // Uniform on {1, ..., 2^16} / 2^16.
  Rational unit_open_below();
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

// Fills a_{i+1,j+1} = r_ij a_{i,j+1} a_{i+1,j} / a_ij from the first row and
// column. `factors` is (k-1) x (k-1), row-major by window. Errors:
// InconsistentCorner, FactorBelowC, NonPositiveEntry, ShapeMismatch.
Matrix generate_tp2c(std::size_t k, const Scalar& c, std::span<const Scalar> first_row,
                     std::span<const Scalar> first_col, const std::vector<std::vector<Scalar>>& factors);

Matrix generate_tp2c(std::size_t k, const Scalar& c, std::span<const Scalar> first_row,
                     std::span<const Scalar> first_col, const RandomFactorPolicy& policy);

// generate_tp2c with first row/column also drawn from the policy's stream
// (entries 1 + u, shared corner).
Matrix random_tp2c(std::size_t k, const Scalar& c, const RandomFactorPolicy& policy);

}  // namespace tpsharp

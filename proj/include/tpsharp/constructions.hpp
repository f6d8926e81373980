#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tpsharp/matrix.hpp"
#include "tpsharp/numerics.hpp"
#include "tpsharp/ratio_criteria.hpp"

namespace tpsharp {

// Tridiagonal symmetric Toeplitz matrix: 2cos(phi) on the diagonal, 1 on
// the two neighbouring diagonals. Lies in TP_2(4cos^2 phi).
// BadDomain unless 0 <= phi < pi/2.
Matrix toeplitz_mn(std::size_t n, double phi);

// sin((n+1) phi) / sin(phi), phi in (0, pi/2).
double det_mn_closed(std::size_t n, double phi);

/*
 * Off-band entries e_1 > ... > e_{n-2} > 0 keeping T_n inside
 * TP_2(4cos^2 phi). With c = 4cos^2 phi:
 *   e_1 = s / (c 2cos phi),  e_2 = s e_1^2 / c,  e_j = s e_{j-1}^2 / (c e_{j-2}).
 * s = 1 makes every window ratio equal c; s < 1 leaves slack.
 */
std::vector<double> epsilon_cascade(std::size_t n, double phi, double safety);

// Symmetric Toeplitz: offset 0 -> 2cos phi, +-1 -> 1, +-j -> eps[j-2].
// BadEpsilons unless eps has n-2 strictly decreasing positive entries.
Matrix toeplitz_tn(std::size_t n, double phi, std::span<const double> eps);

// Hankel matrix with h_s = p^(floor(s/2) floor((s+1)/2)) q^(floor((s-1)/2) floor(s/2)),
// s = i + j - 2. BadDomain unless p, q >= 1.
Matrix hankel_dn(std::size_t n, const Scalar& p, const Scalar& q);

// (alpha_n, beta_n) = (n(n-1)(n-2)/3, n(n-1)(2n-1)/6). BadDomain for n < 3.
std::pair<long long, long long> lemma4_exponents(int n);

struct Lemma4Report {
  int n = 0;
  Rational p;
  long long alpha = 0;
  long long beta = 0;
  long long degree_bound = 0;            // max q-degree over the permutation expansion
  std::vector<Rational> q_values;
  std::vector<Rational> residuals;       // det D_n(p, q) - p^beta q^alpha F_n(p)
  std::vector<Rational> coefficients;    // det D_n(p, q) in q, ascending powers
  Rational leading_coefficient;          // coefficient of q^alpha
  Rational expected_leading;             // p^beta F_n(p)
  int residual_degree = -1;              // -1 for the zero polynomial
  bool extra_points_consistent = true;   // points beyond degree_bound + 1 agree
  bool holds = false;
};

// Interpolates det D_n(p, q) exactly in q and checks its top coefficient.
// NeedMorePoints if fewer than alpha_n + 1 distinct q values are given.
Lemma4Report lemma4_leading_check(int n, const Rational& p, std::span<const Rational> q_values);

struct WitnessOptions {
  int max_halvings = 80;   // Toeplitz: safety factor 2^-1 .. 2^-max_halvings
  int max_doublings = 64;  // Hankel: q schedule length
  double tau = kDefaultTau;
};

/*
 * A matrix certified to lie in TP_2(c_target) while its determinant is
 * negative. `exact` is false for the Toeplitz family, whose entries carry
 * cos(phi); there membership and sign go through the float policy.
 */
struct WitnessResult {
  Matrix matrix;
  Scalar c_target;
  RatioReport ratio;
  Membership membership = Membership::Uncertain;
  Scalar det;
  SignClass det_sign;
  bool exact = false;
  nlohmann::json params = nlohmann::json::object();
};

// Errors: BadDomain (c < 1), CNotBelowCk (c not certified below c_k),
// NoConvergence.
WitnessResult toeplitz_witness(int k, const Scalar& c, const WitnessOptions& opts = {});
WitnessResult hankel_witness(int k, const Scalar& c, const WitnessOptions& opts = {});

}  // namespace tpsharp

#pragma once

#include <vector>

#include "tpsharp/interval.hpp"
#include "tpsharp/scalar.hpp"

namespace tpsharp {

// F_0 = F_1 = 1, F_m = F_{m-1} - F_{m-2} / c. Equivalently
// F_m(c) = sum_j C(m-j, j) (-1)^j c^-j and, for c = 4cos^2(phi),
// F_m = sin((m+1) phi) / (c^(m/2) sin(phi)).
struct FSequence {
  Scalar c;
  std::vector<Scalar> values;  // F_0 .. F_M
};

// Alternating binomial sum, exact for exact c. BadDomain if c < 1 or m < 0.
Scalar f_closed(int m, const Scalar& c);

FSequence f_recurrence(int max_m, const Scalar& c);

// Interval F_0 .. F_M over an enclosure of c (lo > 0), propagated through
// the recurrence.
std::vector<RationalInterval> f_recurrence(int max_m, const RationalInterval& c);

// sin((m+1) phi) / (c^(m/2) sin phi), c = 4cos^2 phi; phi in (0, pi/2).
double f_trig(int m, double phi);

// Enclosures of the floor(n/2) roots 4cos^2(j pi/(n+1)), j = 1.., largest
// first.
std::vector<RationalInterval> f_roots(int n, const Rational& width = Rational(1, 1LL << 60));

// F_{j-1}(c_k) - F_{j-2}(c_k)/c_k^2 - 1/c_k^j - F_j(c_k) for k >= 3,
// 2 <= j <= k-1. Exact when c_k is rational, otherwise evaluated at the
// midpoint of a tight enclosure of c_k.
Scalar t4_margin(int k, int j);

// Certified enclosure of the same margin.
RationalInterval t4_margin_enclosure(int k, int j, const Rational& width);

}  // namespace tpsharp

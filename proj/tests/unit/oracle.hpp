#pragma once
// Independent reference implementations, deliberately naive: Laplace
// expansion and explicit subset or permutation enumeration.

#include <algorithm>
#include <numeric>
#include <vector>

#include "tpsharp/matrix.hpp"

namespace oracle {

using tpsharp::Rational;

using Grid = std::vector<std::vector<Rational>>;

inline Grid grid(const tpsharp::Matrix& m) {
  Grid g(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i + 1, j + 1).rational();
  return g;
}

// Cofactor expansion along the first row.
inline Rational cofactor_det(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 0) return Rational(1);
  if (n == 1) return a[0][0];
  Rational total(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Grid sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t t = 0; t < n; ++t)
        if (t != j) row.push_back(a[i][t]);
      sub.push_back(std::move(row));
    }
    const Rational term = a[0][j] * cofactor_det(sub);
    total += (j % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

struct MinorStats {
  Rational min;
  std::size_t count = 0;
};

// Minimum over every minor of order 1..k.
inline MinorStats brute_minors(const Grid& a, std::size_t k) {
  MinorStats st;
  bool first = true;
  for (std::size_t ord = 1; ord <= k; ++ord) {
    for (const auto& r : subsets(a.size(), ord)) {
      for (const auto& c : subsets(a[0].size(), ord)) {
        Grid sub;
        for (auto i : r) {
          std::vector<Rational> row;
          for (auto j : c) row.push_back(a[i][j]);
          sub.push_back(row);
        }
        const Rational d = cofactor_det(sub);
        if (first || d < st.min) st.min = d;
        first = false;
        ++st.count;
      }
    }
  }
  return st;
}

// Max over permutations of sum w(i + sigma(i)); 0-based i, sigma(i).
template <class W>
long long max_permutation_weight(std::size_t n, W w) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  long long best = -1;
  do {
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w(i + p[i]);
    best = std::max(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace oracle

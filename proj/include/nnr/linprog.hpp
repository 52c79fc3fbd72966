#pragma once

#include "nnr/errors.hpp"
#include "nnr/geometry.hpp"

#include <vector>

// Phase-I simplex for the feasibility of  A x = b, x >= 0, with Bland's rule.
// Exact over rationals (eps = 0), tolerance-based over doubles.

namespace nnr::lp {

template <class S>
struct LpResult {
  bool feasible = false;
  std::vector<S> x;
};

template <class S>
LpResult<S> equality_feasible(std::vector<std::vector<S>> a, std::vector<S> b,
                              const geo::Tol<S>& tol) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  for (int i = 0; i < m; ++i)
    if (tol.sign(b[i]) < 0) {
      for (auto& v : a[i]) v = S(0) - v;
      b[i] = S(0) - b[i];
    }

  // tableau rows: [A | I | b]; artificial basis, cost = sum of artificials
  const int cols = n + m;
  std::vector<std::vector<S>> t(m, std::vector<S>(cols + 1, S(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = S(1);
    t[i][cols] = b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  std::vector<S> cost(cols + 1, S(0));  // reduced costs, obj in last slot
  for (int j = 0; j <= cols; ++j) {
    S s{};
    for (int i = 0; i < m; ++i) s += t[i][j];
    cost[j] = S(0) - s;
  }
  for (int i = 0; i < m; ++i) cost[n + i] = S(0);  // artificials are basic

  const long guard = 2000L + 50L * (m + 1L) * (cols + 1L);
  for (long it = 0; it < guard; ++it) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (tol.sign(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    S best{};
    for (int i = 0; i < m; ++i) {
      if (tol.sign(t[i][enter]) <= 0) continue;
      S ratio = t[i][cols] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen in phase I
    // pivot
    S piv = t[leave][enter];
    for (int j = 0; j <= cols; ++j) t[leave][j] = t[leave][j] / piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      S f = t[i][enter];
      if (tol.sign(f) == 0) continue;
      for (int j = 0; j <= cols; ++j) t[i][j] = t[i][j] - f * t[leave][j];
    }
    S f = cost[enter];
    if (tol.sign(f) != 0)
      for (int j = 0; j <= cols; ++j) cost[j] = cost[j] - f * t[leave][j];
    basis[leave] = enter;
  }

  LpResult<S> res;
  S obj = S(0) - cost[cols];
  if (tol.sign(obj) > 0) return res;  // artificials remain: infeasible
  res.feasible = true;
  res.x.assign(n, S(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][cols];
  return res;
}

}  // namespace nnr::lp

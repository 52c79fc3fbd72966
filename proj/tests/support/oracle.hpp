#pragma once

// Brute-force boundary-sweep oracle for the nested polygon decision, kept
// independent of the library implementation: plain double arithmetic and
// dense seeding along the outer boundary instead of exact event enumeration.
// (Seeding tangent-line entry points only, as a direction sweep does, provably
// misses triangles whose feasible seed arc contains no tangent entry point;
// boundary positions cover every seed arc at the sweep resolution.)
// Used to validate every derived geometry value before the exact machinery
// is trusted.

#include "nnr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

struct P2 {
  double x, y;
};

inline double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline std::vector<P2> hull_of(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) {
                          return std::abs(a.x - b.x) < 1e-13 && std::abs(a.y - b.y) < 1e-13;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<P2> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-15) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, low = k + 1; i >= 0; --i) {
    while (k >= low && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-15) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Greedy chords of maximal advance from one boundary seed; the count of
// vertices once the closing chord keeps the whole hull weakly left.
inline int wrap_count_from_seed(const std::vector<P2>& outer, const std::vector<P2>& hull,
                                const P2& seed, int max_steps) {
  const int n = static_cast<int>(outer.size());
  std::vector<P2> verts{seed};
  for (int step = 0; step < max_steps; ++step) {
    if (verts.size() >= 3) {
      bool closes = true;
      for (const auto& w : hull)
        if (cross(verts.back(), seed, w) < -1e-12) {
          closes = false;
          break;
        }
      if (closes) return static_cast<int>(verts.size());
    }
    const P2 p = verts.back();
    int best = -1;
    double bestd = -1;
    for (int i = 0; i < static_cast<int>(hull.size()); ++i) {
      if (std::abs(hull[i].x - p.x) < 1e-13 && std::abs(hull[i].y - p.y) < 1e-13) continue;
      bool ok = true;
      for (int j = 0; j < static_cast<int>(hull.size()) && ok; ++j)
        if (cross(p, hull[i], hull[j]) < -1e-12) ok = false;
      if (!ok) continue;
      double dist = (hull[i].x - p.x) * (hull[i].x - p.x) + (hull[i].y - p.y) * (hull[i].y - p.y);
      if (dist > bestd) {
        bestd = dist;
        best = i;
      }
    }
    if (best < 0) {
      // p sits on the hull: follow its ccw edge
      int at = -1;
      for (int i = 0; i < static_cast<int>(hull.size()); ++i)
        if (std::abs(hull[i].x - p.x) < 1e-13 && std::abs(hull[i].y - p.y) < 1e-13) at = i;
      if (at < 0) return max_steps;
      best = (at + 1) % static_cast<int>(hull.size());
    }
    P2 dir{hull[best].x - p.x, hull[best].y - p.y};
    double t_exit = 1e18;
    bool found = false;
    for (int i = 0; i < n; ++i) {
      const P2& a = outer[i];
      const P2& b = outer[(i + 1) % n];
      P2 nrm{b.y - a.y, a.x - b.x};  // outward for ccw
      double denom = dir.x * nrm.x + dir.y * nrm.y;
      if (denom <= 1e-15) continue;
      double t = ((a.x - p.x) * nrm.x + (a.y - p.y) * nrm.y) / denom;
      if (t < 0) t = 0;
      if (t < t_exit) {
        t_exit = t;
        found = true;
      }
    }
    if (!found || t_exit < 1e-13) return max_steps;
    verts.push_back({p.x + t_exit * dir.x, p.y + t_exit * dir.y});
  }
  return max_steps;
}

inline int min_nested_count(const std::vector<P2>& outer, const std::vector<P2>& inner,
                            int seeds = 40000) {
  std::vector<P2> hull = hull_of(inner);
  if (hull.size() <= 1) return static_cast<int>(hull.size());
  if (hull.size() == 2) return 2;
  const int max_steps = 16;
  const int n = static_cast<int>(outer.size());
  const int per_edge = std::max(seeds / n, 1);
  int best = max_steps;
  for (int i = 0; i < n && best > 3; ++i) {
    const P2& a = outer[i];
    const P2& b = outer[(i + 1) % n];
    for (int s = 0; s < per_edge && best > 3; ++s) {
      double t = static_cast<double>(s) / per_edge;
      P2 seed{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      best = std::min(best, wrap_count_from_seed(outer, hull, seed, max_steps));
    }
  }
  return best;
}

inline bool triangle_exists(const std::vector<P2>& outer, const std::vector<P2>& inner,
                            int seeds = 40000) {
  return min_nested_count(outer, inner, seeds) <= 3;
}

// Random rank-3 stochastic matrix: a random 2-plane through an interior point
// of the simplex, with columns sampled inside the section.
inline nnr::Matrix random_rank3_stochastic(std::mt19937_64& rng, int n, int m) {
  using nnr::Matrix;
  using nnr::Rational;
  std::uniform_int_distribution<int> mass(1, 12);
  std::uniform_int_distribution<int> dirv(-6, 6);
  std::uniform_int_distribution<int> coefnum(-64, 64);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Rational> o(n);
    Rational tot = 0;
    for (auto& v : o) {
      v = mass(rng);
      tot += v;
    }
    for (auto& v : o) v /= tot;
    std::vector<Rational> u(n), w(n);
    Rational su = 0, sw = 0;
    for (int i = 0; i < n; ++i) {
      u[i] = dirv(rng);
      w[i] = dirv(rng);
      su += u[i];
      sw += w[i];
    }
    for (int i = 0; i < n; ++i) {
      u[i] -= su / n;
      w[i] -= sw / n;
    }

    Matrix mtx(n, m, nnr::Backend::Exact);
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        Rational a(coefnum(rng), 64), b(coefnum(rng), 64);
        placed = true;
        std::vector<Rational> col(n);
        for (int i = 0; i < n; ++i) {
          col[i] = o[i] + a * u[i] + b * w[i];
          if (col[i] < 0) {
            placed = false;
            break;
          }
        }
        if (placed)
          for (int i = 0; i < n; ++i) mtx.set(i, j, col[i]);
      }
      ok = placed;
    }
    if (!ok) continue;
    if (nnr::rank(mtx) != 3) continue;
    return mtx;
  }
  throw std::runtime_error("could not sample a rank-3 stochastic matrix");
}

}  // namespace oracle

#pragma once

#include "nnr/errors.hpp"
#include "nnr/rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

// Planar primitives shared by the nested-polygon machinery. Everything is
// templated on the scalar: Rational with eps = 0 decides exactly, double with
// a small eps decides up to the geometric tolerance.

namespace nnr::geo {

template <class S>
struct Tol {
  S eps{};
  int sign(const S& v) const {
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
  }
};

template <class S>
struct Vec2 {
  S x{}, y{};
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

template <class S>
Vec2<S> scaled(const Vec2<S>& a, const S& t) {
  return {a.x * t, a.y * t};
}

template <class S>
S cross(const Vec2<S>& a, const Vec2<S>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class S>
S cross(const Vec2<S>& o, const Vec2<S>& a, const Vec2<S>& b) {
  return cross<S>(a - o, b - o);
}

template <class S>
S dot(const Vec2<S>& a, const Vec2<S>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class S>
S dist2(const Vec2<S>& a, const Vec2<S>& b) {
  return dot<S>(a - b, a - b);
}

template <class S>
bool near_eq(const Vec2<S>& a, const Vec2<S>& b, const Tol<S>& tol) {
  return tol.sign(a.x - b.x) == 0 && tol.sign(a.y - b.y) == 0;
}

// Strict convex hull, counterclockwise, collinear points dropped.
template <class S>
std::vector<Vec2<S>> convex_hull(std::vector<Vec2<S>> pts, const Tol<S>& tol) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec2<S>& a, const Vec2<S>& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Vec2<S>& a, const Vec2<S>& b) { return near_eq(a, b, tol); }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Vec2<S>> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && tol.sign(cross(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && tol.sign(cross(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// All hull points collinear? (hull of size <= 2 counts as degenerate)
template <class S>
bool hull_degenerate(const std::vector<Vec2<S>>& hull) {
  return hull.size() <= 2;
}

template <class S>
bool point_on_segment(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& p, const Tol<S>& tol) {
  if (tol.sign(cross(a, b, p)) != 0) return false;
  S t = dot<S>(p - a, b - a);
  return tol.sign(t) >= 0 && tol.sign(dot<S>(b - a, b - a) - t) >= 0;
}

// Closed containment in a convex ccw polygon; handles degenerate polygons.
template <class S>
bool point_in_convex(const std::vector<Vec2<S>>& poly, const Vec2<S>& p, const Tol<S>& tol) {
  const int n = static_cast<int>(poly.size());
  if (n == 0) return false;
  if (n == 1) return near_eq(poly[0], p, tol);
  if (n == 2) return point_on_segment(poly[0], poly[1], p, tol);
  for (int i = 0; i < n; ++i)
    if (tol.sign(cross(poly[i], poly[(i + 1) % n], p)) < 0) return false;
  return true;
}

// Keep the side a*x + b*y <= c (Sutherland-Hodgman step).
template <class S>
std::vector<Vec2<S>> clip_halfplane(const std::vector<Vec2<S>>& poly, const S& a, const S& b,
                                    const S& c, const Tol<S>& tol) {
  std::vector<Vec2<S>> out;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2<S>& p = poly[i];
    const Vec2<S>& q = poly[(i + 1) % n];
    S fp = a * p.x + b * p.y - c;
    S fq = a * q.x + b * q.y - c;
    bool pin = tol.sign(fp) <= 0;
    bool qin = tol.sign(fq) <= 0;
    if (pin) out.push_back(p);
    if (pin != qin) {
      S denom = fp - fq;
      if (tol.sign(denom) != 0) {
        S t = fp / denom;
        out.push_back({p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t});
      }
    }
  }
  return out;
}

// Dedupe consecutive near-equal vertices and drop collinear ones; returns a
// strict ccw polygon (possibly with < 3 vertices if the input was degenerate).
template <class S>
std::vector<Vec2<S>> tidy_polygon(const std::vector<Vec2<S>>& poly, const Tol<S>& tol) {
  std::vector<Vec2<S>> pts = poly;
  return convex_hull(std::move(pts), tol);
}

// Exit point of the ray p + t*d (t >= 0) out of a convex ccw polygon that
// contains p. Returns the largest t still inside, as a point.
template <class S>
Vec2<S> ray_exit(const std::vector<Vec2<S>>& poly, const Vec2<S>& p, const Vec2<S>& d,
                 const Tol<S>& tol) {
  const int n = static_cast<int>(poly.size());
  bool found = false;
  S best_t{};
  for (int i = 0; i < n; ++i) {
    Vec2<S> a = poly[i];
    Vec2<S> e = poly[(i + 1) % n] - a;
    // outward normal of the ccw edge
    Vec2<S> nrm{e.y, S(0) - e.x};
    S denom = dot<S>(d, nrm);
    if (tol.sign(denom) <= 0) continue;
    S t = dot<S>(a - p, nrm) / denom;
    if (tol.sign(t) < 0) t = S(0);
    if (!found || t < best_t) {
      best_t = t;
      found = true;
    }
  }
  if (!found) fail("DegenerateSection", "ray does not leave the polygon");
  return p + scaled(d, best_t);
}

// Supporting-ray contact: the farthest point c of the hull such that the whole
// hull lies weakly left of the ray p -> c. When p sits on the hull boundary the
// ray follows the boundary in ccw direction.
template <class S>
Vec2<S> advance_contact(const std::vector<Vec2<S>>& hull, const Vec2<S>& p, const Tol<S>& tol) {
  const int n = static_cast<int>(hull.size());
  for (int i = 0; i < n; ++i)
    if (near_eq(hull[i], p, tol)) return hull[(i + 1) % n];
  for (int i = 0; i < n; ++i) {
    const Vec2<S>& a = hull[i];
    const Vec2<S>& b = hull[(i + 1) % n];
    if (point_on_segment(a, b, p, tol)) return b;
  }
  int best = -1;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      if (tol.sign(cross(p, hull[i], hull[j])) < 0) ok = false;
    if (!ok) continue;
    if (best < 0 || dist2(p, hull[i]) > dist2(p, hull[best])) best = i;
  }
  if (best < 0) fail("DegenerateSection", "no supporting ray; hull malformed");
  return hull[best];
}

constexpr int kNoWrap = 1 << 20;

// Greedy wrap: chords of maximal advance around `hull`, starting at `seed` on
// the outer boundary, until the closing chord back to the seed keeps the hull
// weakly on its left. The closed circuit is reduced to its convex hull and
// verified to contain the inner hull before it counts, so every returned
// count is backed by a checked witness. Returns kNoWrap when the walk fails
// to close within the step guard.
template <class S>
int greedy_wrap(const std::vector<Vec2<S>>& outer, const std::vector<Vec2<S>>& hull,
                const Vec2<S>& seed, const Tol<S>& tol, std::vector<Vec2<S>>* witness = nullptr) {
  std::vector<Vec2<S>> verts{seed};
  const int guard = 2 * static_cast<int>(outer.size() + hull.size()) + 8;
  for (int step = 0; step < guard; ++step) {
    const Vec2<S> cur = verts.back();
    if (verts.size() >= 3) {
      bool closes = true;
      for (const auto& w : hull)
        if (tol.sign(cross(cur, seed, w)) < 0) {
          closes = false;
          break;
        }
      if (closes) {
        std::vector<Vec2<S>> reduced = convex_hull(std::vector<Vec2<S>>(verts), tol);
        bool contains = reduced.size() >= 3;
        for (const auto& w : hull)
          if (contains && !point_in_convex(reduced, w, tol)) contains = false;
        if (contains) {
          if (witness) *witness = reduced;
          return static_cast<int>(reduced.size());
        }
        return kNoWrap;
      }
    }
    Vec2<S> contact = advance_contact(hull, cur, tol);
    Vec2<S> dir = contact - cur;
    if (tol.sign(dot<S>(dir, dir)) == 0) return kNoWrap;
    Vec2<S> nxt = ray_exit(outer, cur, dir, tol);
    if (near_eq(nxt, cur, tol)) return kNoWrap;
    verts.push_back(nxt);
  }
  return kNoWrap;
}

template <class S>
struct NestedResult {
  int k = 0;
  std::vector<Vec2<S>> witness;
};

namespace detail {

// Boundary seeds: outer vertices, intersections of extended inner-hull edge
// lines with the outer boundary, and midpoints of the arcs in between. Between
// consecutive seeds the greedy trace is combinatorially constant, so the sweep
// over these points decides the minimum wrap count.
template <class S>
std::vector<Vec2<S>> sweep_seeds(const std::vector<Vec2<S>>& outer,
                                 const std::vector<Vec2<S>>& hull, const Tol<S>& tol) {
  const int n = static_cast<int>(outer.size());
  // ts[i] = sorted params in [0,1) of seeds on outer edge i
  std::vector<std::vector<S>> ts(n);
  for (int i = 0; i < n; ++i) ts[i].push_back(S(0));
  const int hn = static_cast<int>(hull.size());
  for (int e = 0; e < hn; ++e) {
    Vec2<S> a = hull[e];
    Vec2<S> d = hull[(e + 1) % hn] - a;
    for (int i = 0; i < n; ++i) {
      Vec2<S> p = outer[i];
      Vec2<S> q = outer[(i + 1) % n];
      S denom = cross<S>(d, q - p);
      if (tol.sign(denom) == 0) continue;
      S t = cross<S>(d, a - p) / denom;
      if (tol.sign(t) >= 0 && tol.sign(S(1) - t) > 0) ts[i].push_back(t);
    }
  }
  std::vector<Vec2<S>> seeds;
  for (int i = 0; i < n; ++i) {
    std::sort(ts[i].begin(), ts[i].end());
    ts[i].erase(std::unique(ts[i].begin(), ts[i].end()), ts[i].end());
    Vec2<S> p = outer[i];
    Vec2<S> e = outer[(i + 1) % n] - p;
    ts[i].push_back(S(1));  // arc up to the next vertex
    for (std::size_t j = 0; j + 1 < ts[i].size(); ++j) {
      S mid = (ts[i][j] + ts[i][j + 1]) / S(2);
      seeds.push_back(p + scaled(e, ts[i][j]));
      seeds.push_back(p + scaled(e, mid));
    }
  }
  return seeds;
}

}  // namespace detail

// Minimum number of vertices of a convex polygon nested between conv(inner)
// and the convex ccw polygon `outer`, plus one witness vertex set.
template <class S>
NestedResult<S> min_nested_polygon_impl(const std::vector<Vec2<S>>& outer,
                                        const std::vector<Vec2<S>>& inner, const Tol<S>& tol) {
  if (outer.size() < 3) fail("DegenerateSection", "outer polygon is degenerate");
  if (inner.empty()) fail("BadShape", "no inner points");
  for (const auto& z : inner)
    if (!point_in_convex(outer, z, tol))
      fail("InnerOutsideOuter", "an inner point lies outside the outer polygon");

  std::vector<Vec2<S>> hull = convex_hull(std::vector<Vec2<S>>(inner), tol);
  if (hull.size() == 1) return {1, hull};
  if (hull.size() == 2) return {2, hull};

  NestedResult<S> best;
  best.k = kNoWrap;
  for (const auto& seed : detail::sweep_seeds(outer, hull, tol)) {
    std::vector<Vec2<S>> w;
    int k = greedy_wrap(outer, hull, seed, tol, &w);
    if (k < best.k) {
      best.k = k;
      best.witness = std::move(w);
    }
  }
  if (best.k >= kNoWrap) fail("DegenerateSection", "nested polygon search failed to close");
  return best;
}

}  // namespace nnr::geo

#include "nnr/simplexgeo.hpp"

#include "nnr/linprog.hpp"

#include <json.hpp>

#include <cmath>

namespace nnr {

namespace {

using geo::Tol;
using geo::Vec2;

Tol<Rational> exact_tol() { return Tol<Rational>{Rational(0)}; }

std::vector<Vec2<double>> to_f(const std::vector<Vec2<Rational>>& v) {
  std::vector<Vec2<double>> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back({to_double(p.x), to_double(p.y)});
  return out;
}

std::vector<Vec2<Rational>> to_q(const std::vector<Vec2<double>>& v) {
  std::vector<Vec2<Rational>> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back({rational_from_double(p.x), rational_from_double(p.y)});
  return out;
}

std::vector<Rational> column(const Matrix& m, int j) {
  std::vector<Rational> c(m.rows());
  for (int i = 0; i < m.rows(); ++i) c[i] = m.q(i, j);
  return c;
}

Rational dotq(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PointCloud project_columns(const Matrix& p, double tau_geo) {
  if (p.empty()) fail("BadShape", "empty matrix");
  for (int j = 0; j < p.cols(); ++j) {
    Rational s = p.column_sum(j);
    bool ok = p.is_exact() ? (s == 1) : (std::abs(to_double(s) - 1.0) <= std::max(tau_geo, 1e-12));
    if (!ok) fail("NotStochastic", "column " + std::to_string(j) + " does not sum to 1");
    for (int i = 0; i < p.rows(); ++i)
      if (p.q(i, j) < (p.is_exact() ? Rational(0) : rational_from_double(-tau_geo)))
        fail("NotStochastic", "negative entry in column " + std::to_string(j));
  }
  PointCloud pc;
  pc.dim = p.rows() - 1;
  pc.backend = p.backend();
  for (int j = 0; j < p.cols(); ++j) {
    std::vector<Rational> pt(pc.dim);
    for (int i = 0; i < pc.dim; ++i) pt[i] = p.q(i, j);
    pc.points.push_back(std::move(pt));
    pc.labels.push_back(j);
  }
  return pc;
}

bool point_in_hull(const std::vector<Rational>& q,
                   const std::vector<std::vector<Rational>>& generators, Backend backend,
                   double tau_geo) {
  if (generators.empty()) return false;
  const std::size_t d = q.size();
  for (const auto& g : generators)
    if (g.size() != d) fail("DimensionMismatch", "generator dimension differs from the point");

  const int rows = static_cast<int>(d) + 1;
  const int n = static_cast<int>(generators.size());
  if (backend == Backend::Exact) {
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n));
    std::vector<Rational> b(rows);
    for (int i = 0; i < rows - 1; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = generators[j][i];
      b[i] = q[i];
    }
    for (int j = 0; j < n; ++j) a[rows - 1][j] = 1;
    b[rows - 1] = 1;
    return lp::equality_feasible<Rational>(a, b, exact_tol()).feasible;
  }
  std::vector<std::vector<double>> a(rows, std::vector<double>(n));
  std::vector<double> b(rows);
  for (int i = 0; i < rows - 1; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = to_double(generators[j][i]);
    b[i] = to_double(q[i]);
  }
  for (int j = 0; j < n; ++j) a[rows - 1][j] = 1.0;
  b[rows - 1] = 1.0;
  return lp::equality_feasible<double>(a, b, Tol<double>{tau_geo}).feasible;
}

namespace {

// Chart of the affine hull of the columns, built in the ambient space so the
// float chart is isometric to the simplex-plane geometry.
Chart build_chart(const Matrix& p) {
  const int n = p.rows(), m = p.cols();
  Chart ch;
  ch.origin.assign(n, Rational(0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) ch.origin[i] += p.q(i, j) / m;

  auto diff = [&](int j) {
    std::vector<Rational> w(n);
    for (int i = 0; i < n; ++i) w[i] = p.q(i, j) - ch.origin[i];
    return w;
  };

  std::vector<Rational> u, v;
  for (int j = 0; j < m && v.empty(); ++j) {
    std::vector<Rational> w = diff(j);
    Rational ww = dotq(w, w);
    if (ww == 0) continue;
    if (u.empty()) {
      u = std::move(w);
      continue;
    }
    Rational proj = dotq(w, u) / dotq(u, u);
    for (int i = 0; i < n; ++i) w[i] -= proj * u[i];
    if (dotq(w, w) != 0) v = std::move(w);
  }
  if (u.empty() || v.empty())
    fail("DegenerateSection", "columns do not span a two-dimensional section");

  if (p.backend() == Backend::Float) {
    double nu = std::sqrt(to_double(dotq(u, u)));
    double nv = std::sqrt(to_double(dotq(v, v)));
    for (int i = 0; i < n; ++i) {
      u[i] = rational_from_double(to_double(u[i]) / nu);
      v[i] = rational_from_double(to_double(v[i]) / nv);
    }
    ch.orthonormal = true;
  }
  ch.u = std::move(u);
  ch.v = std::move(v);
  return ch;
}

Vec2<Rational> chart_coords(const Chart& ch, const std::vector<Rational>& x, Backend backend) {
  std::vector<Rational> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] - ch.origin[i];
  if (backend == Backend::Exact)
    return {dotq(w, ch.u) / dotq(ch.u, ch.u), dotq(w, ch.v) / dotq(ch.v, ch.v)};
  double a = 0, b = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += to_double(w[i]) * to_double(ch.u[i]);
    b += to_double(w[i]) * to_double(ch.v[i]);
  }
  return {rational_from_double(a), rational_from_double(b)};
}

std::vector<Rational> chart_lift(const Chart& ch, const Vec2<Rational>& p, Backend backend) {
  std::vector<Rational> x(ch.origin.size());
  if (backend == Backend::Exact) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = ch.origin[i] + p.x * ch.u[i] + p.y * ch.v[i];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = rational_from_double(to_double(ch.origin[i]) + to_double(p.x) * to_double(ch.u[i]) +
                                  to_double(p.y) * to_double(ch.v[i]));
  }
  return x;
}

// Section of the simplex by the chart plane: clip a generous box against the
// n half-planes x_i >= 0 expressed in chart coordinates.
template <class S>
std::vector<Vec2<S>> section_outer(const std::vector<S>& o, const std::vector<S>& u,
                                   const std::vector<S>& v, const Tol<S>& tol) {
  const std::size_t n = o.size();
  S bound = S(4);
  S uu{}, vv{};
  for (std::size_t i = 0; i < n; ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    S oi = o[i] < S(0) ? S(0) - o[i] : o[i];
    S ui = u[i] < S(0) ? S(0) - u[i] : u[i];
    S vi = v[i] < S(0) ? S(0) - v[i] : v[i];
    bound += (S(1) + oi) * (ui / uu + vi / vv);
  }
  std::vector<Vec2<S>> poly{{S(0) - bound, S(0) - bound},
                            {bound, S(0) - bound},
                            {bound, bound},
                            {S(0) - bound, bound}};
  for (std::size_t i = 0; i < n && poly.size() >= 3; ++i) {
    // o_i + a u_i + b v_i >= 0  <=>  (-u_i) a + (-v_i) b <= o_i
    poly = geo::clip_halfplane(poly, S(0) - u[i], S(0) - v[i], o[i], tol);
  }
  return geo::tidy_polygon(poly, tol);
}

}  // namespace

NestedInstance section_polygon(const Matrix& p, double tau_rank, double tau_geo) {
  int r = rank(p, tau_rank);
  if (r != 3) fail("WrongRank", "section needs rank 3, got " + std::to_string(r));
  project_columns(p, tau_geo);  // validates stochasticity

  NestedInstance inst;
  inst.backend = p.backend();
  inst.chart = build_chart(p);
  for (int j = 0; j < p.cols(); ++j) {
    inst.inner.push_back(chart_coords(inst.chart, column(p, j), p.backend()));
    inst.labels.push_back(j);
  }

  if (p.is_exact()) {
    inst.outer = section_outer<Rational>(inst.chart.origin, inst.chart.u, inst.chart.v, exact_tol());
  } else {
    std::vector<double> o, u, v;
    for (std::size_t i = 0; i < inst.chart.origin.size(); ++i) {
      o.push_back(to_double(inst.chart.origin[i]));
      u.push_back(to_double(inst.chart.u[i]));
      v.push_back(to_double(inst.chart.v[i]));
    }
    inst.outer = to_q(section_outer<double>(o, u, v, Tol<double>{tau_geo}));
  }
  if (inst.outer.size() < 3) fail("DegenerateSection", "simplex section is not two-dimensional");

  // chart must reproduce the columns: guards against off-plane columns
  for (int j = 0; j < p.cols(); ++j) {
    std::vector<Rational> lift = chart_lift(inst.chart, inst.inner[j], p.backend());
    for (int i = 0; i < p.rows(); ++i) {
      if (p.is_exact()) {
        if (lift[i] != p.q(i, j)) fail("DegenerateSection", "column leaves the section plane");
      } else if (std::abs(to_double(lift[i]) - p.d(i, j)) > 1e-7) {
        fail("DegenerateSection", "column leaves the section plane");
      }
    }
  }
  return inst;
}

MinNested min_nested_polygon(const NestedInstance& inst, double tau_geo) {
  MinNested out;
  if (inst.backend == Backend::Exact) {
    auto res = geo::min_nested_polygon_impl<Rational>(inst.outer, inst.inner, exact_tol());
    out.k = res.k;
    out.witness = std::move(res.witness);
  } else {
    auto res =
        geo::min_nested_polygon_impl<double>(to_f(inst.outer), to_f(inst.inner), Tol<double>{tau_geo});
    out.k = res.k;
    out.witness = to_q(res.witness);
  }
  return out;
}

namespace {

Factorization factor_shell(const Matrix& p, int k) {
  Factorization f;
  f.n = p.rows();
  f.m = p.cols();
  f.k = k;
  f.backend = p.backend();
  return f;
}

void finish_residual(Factorization& f, const Matrix& p) {
  f.residual = frobenius_distance(reconstruct(f), p);
}

// Witness with one dyad per lifted vertex: left = the stochastic lift, right =
// convex coefficients rescaled by the column 1-norms of the original matrix.
std::optional<Factorization> lift_witness(const Matrix& p, const NestedInstance& inst,
                                          const std::vector<Vec2<Rational>>& verts,
                                          const ScalingDiag& sd, double tau_geo) {
  const int k = static_cast<int>(verts.size());
  Factorization f = factor_shell(p, k);
  for (const auto& vtx : verts) {
    std::vector<Rational> c = chart_lift(inst.chart, vtx, inst.backend);
    for (auto& ci : c) {
      if (ci < 0) {
        if (inst.backend == Backend::Exact || to_double(ci) < -tau_geo * 10) return std::nullopt;
        ci = 0;
      }
    }
    f.left.push_back(std::move(c));
  }
  // convex coefficients per column
  const int m = static_cast<int>(inst.inner.size());
  f.right.assign(k, std::vector<Rational>(m, Rational(0)));
  if (k == 3) {
    const Vec2<Rational>&A = verts[0], &B = verts[1], &C = verts[2];
    Rational den = geo::cross<Rational>(B - A, C - A);
    if (den == 0) return std::nullopt;
    for (int j = 0; j < m; ++j) {
      Vec2<Rational> z = inst.inner[j];
      Rational beta = geo::cross<Rational>(z - A, C - A) / den;
      Rational gamma = geo::cross<Rational>(B - A, z - A) / den;
      Rational alpha = Rational(1) - beta - gamma;
      Rational coef[3] = {alpha, beta, gamma};
      for (int h = 0; h < 3; ++h) {
        Rational c = coef[h];
        if (c < 0) {
          if (inst.backend == Backend::Exact || to_double(c) < -tau_geo * 10) return std::nullopt;
          c = 0;
        }
        f.right[h][j] = c * sd.factors[j];
      }
    }
  } else {
    // general k-gon: solve the convex combination per column by LP
    geo::Tol<Rational> tol = exact_tol();
    for (int j = 0; j < m; ++j) {
      std::vector<std::vector<Rational>> a(3, std::vector<Rational>(k));
      for (int h = 0; h < k; ++h) {
        a[0][h] = verts[h].x;
        a[1][h] = verts[h].y;
        a[2][h] = 1;
      }
      std::vector<Rational> b{inst.inner[j].x, inst.inner[j].y, Rational(1)};
      auto sol = inst.backend == Backend::Exact
                     ? lp::equality_feasible<Rational>(a, b, tol)
                     : [&] {
                         std::vector<std::vector<double>> af(3, std::vector<double>(k));
                         std::vector<double> bf(3);
                         for (int h = 0; h < k; ++h) {
                           af[0][h] = to_double(verts[h].x);
                           af[1][h] = to_double(verts[h].y);
                           af[2][h] = 1.0;
                         }
                         for (int i = 0; i < 3; ++i) bf[i] = to_double(b[i]);
                         auto rf = lp::equality_feasible<double>(af, bf, Tol<double>{tau_geo});
                         lp::LpResult<Rational> rq;
                         rq.feasible = rf.feasible;
                         for (double xv : rf.x) rq.x.push_back(rational_from_double(std::max(xv, 0.0)));
                         return rq;
                       }();
      if (!sol.feasible) return std::nullopt;
      for (int h = 0; h < k; ++h) f.right[h][j] = sol.x[h] * sd.factors[j];
    }
  }
  finish_residual(f, p);
  return f;
}

std::optional<Factorization> rank_le2_witness(const Matrix& p, const Matrix& sto,
                                              const ScalingDiag& sd, int r) {
  Factorization f = factor_shell(p, r);
  if (r == 0) return f;
  if (r == 1) {
    f.left.push_back(column(sto, 0));
    std::vector<Rational> rr(p.cols());
    for (int j = 0; j < p.cols(); ++j) rr[j] = sd.factors[j];
    f.right.push_back(std::move(rr));
    finish_residual(f, p);
    return f;
  }
  // r == 2: the projected columns sit on a line; the two extreme columns span
  // everything with convex coefficients.
  const int n = p.rows(), m = p.cols();
  std::vector<Rational> o = column(sto, 0);
  std::vector<Rational> dir;
  for (int j = 1; j < m && dir.empty(); ++j) {
    std::vector<Rational> w(n);
    bool nz = false;
    for (int i = 0; i < n; ++i) {
      w[i] = sto.q(i, j) - o[i];
      nz = nz || w[i] != 0;
    }
    if (nz) dir = std::move(w);
  }
  if (dir.empty()) return std::nullopt;
  Rational dd = dotq(dir, dir);
  std::vector<Rational> t(m);
  int jmin = 0, jmax = 0;
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> w(n);
    for (int i = 0; i < n; ++i) w[i] = sto.q(i, j) - o[i];
    t[j] = dotq(w, dir) / dd;
    if (t[j] < t[jmin]) jmin = j;
    if (t[j] > t[jmax]) jmax = j;
  }
  Rational span = t[jmax] - t[jmin];
  if (span == 0) return std::nullopt;
  f.left.push_back(column(sto, jmin));
  f.left.push_back(column(sto, jmax));
  f.right.assign(2, std::vector<Rational>(m));
  for (int j = 0; j < m; ++j) {
    Rational a = (t[j] - t[jmin]) / span;
    f.right[0][j] = (Rational(1) - a) * sd.factors[j];
    f.right[1][j] = a * sd.factors[j];
  }
  finish_residual(f, p);
  return f;
}

}  // namespace

RankResult nonneg_rank(const Matrix& p, const NnRankOptions& opts) {
  if (p.empty()) fail("BadShape", "empty matrix");
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  ScalingDiag sd = scaling_factors(p);  // rejects zero columns

  RankResult res;
  res.ordinary_rank = rank(p, opts.tau_rank);
  const int minnm = std::min(p.rows(), p.cols());
  Matrix sto = to_stochastic(p);

  auto attach = [&](std::optional<Factorization> w) {
    if (!opts.want_witness || !w) return;
    double scale = std::max(1.0, frobenius_norm(p));
    if (w->residual <= opts.fit_tol * scale && w->k == res.nn_upper) res.witness = std::move(w);
  };

  if (res.ordinary_rank <= 2) {
    res.nn_lower = res.nn_upper = res.ordinary_rank;
    res.exact = true;
    attach(rank_le2_witness(p, sto, sd, res.ordinary_rank));
    return res;
  }
  if (minnm <= 3) {
    // rank 3 with three rows or columns: the trivial side decomposition is optimal
    res.nn_lower = res.nn_upper = 3;
    res.exact = true;
    attach(trivial_factorization(p));
    return res;
  }
  if (res.ordinary_rank == 3) {
    NestedInstance inst = section_polygon(sto, opts.tau_rank, opts.tau_geo);
    MinNested nested = min_nested_polygon(inst, opts.tau_geo);
    if (nested.k <= 3) {
      res.nn_lower = res.nn_upper = 3;
      res.exact = true;
      attach(lift_witness(p, inst, nested.witness, sd, opts.tau_geo));
      return res;
    }
    if (minnm == 4) {
      res.nn_lower = res.nn_upper = 4;
      res.exact = true;
      attach(trivial_factorization(p));
      return res;
    }
    // beyond 4 rows and columns a 4-vertex witness may leave the section
    // plane, so only the interval is reported
    res.nn_lower = 4;
    NmfOptions nops = opts.nmf;
    int upper_nmf = nnrank_upper(p, opts.fit_tol, nops);
    res.nn_upper = std::min({nested.k, upper_nmf, minnm});
    res.nn_upper = std::max(res.nn_upper, res.nn_lower);
    res.exact = false;
    if (res.nn_upper == nested.k)
      attach(lift_witness(p, inst, nested.witness, sd, opts.tau_geo));
    else if (res.nn_upper == minnm)
      attach(trivial_factorization(p));
    else
      attach(nmf(p, res.nn_upper, nops));
    return res;
  }

  res.nn_lower = res.ordinary_rank;
  NmfOptions nops = opts.nmf;
  res.nn_upper = std::max(nnrank_upper(p, opts.fit_tol, nops), res.nn_lower);
  res.exact = (res.nn_lower == res.nn_upper);
  if (res.nn_upper == minnm)
    attach(trivial_factorization(p));
  else
    attach(nmf(p, res.nn_upper, nops));
  return res;
}

std::string rank_result_to_json(const RankResult& r, bool include_witness) {
  nlohmann::json j;
  j["rank"] = r.ordinary_rank;
  j["nn_lower"] = r.nn_lower;
  j["nn_upper"] = r.nn_upper;
  j["exact"] = r.exact;
  if (include_witness && r.witness)
    j["witness"] = nlohmann::json::parse(factorization_to_json(*r.witness));
  return j.dump();
}

}  // namespace nnr

#include "nnr/factorize.hpp"

#include <json.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace nnr {

Matrix reconstruct(const Factorization& f) {
  Matrix out(f.n, f.m, f.backend);
  for (int h = 0; h < f.k; ++h)
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.m; ++j) {
        if (f.backend == Backend::Exact)
          out.set(i, j, out.q(i, j) + f.left[h][i] * f.right[h][j]);
        else
          out.set(i, j, out.d(i, j) + to_double(f.left[h][i]) * to_double(f.right[h][j]));
      }
  return out;
}

Factorization trivial_factorization(const Matrix& p) {
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  Factorization f;
  f.n = p.rows();
  f.m = p.cols();
  f.backend = p.backend();
  f.k = std::min(f.n, f.m);
  if (f.n <= f.m) {
    // unit columns times the rows
    for (int i = 0; i < f.n; ++i) {
      std::vector<Rational> c(f.n, Rational(0));
      c[i] = 1;
      std::vector<Rational> r(f.m);
      for (int j = 0; j < f.m; ++j) r[j] = p.q(i, j);
      f.left.push_back(std::move(c));
      f.right.push_back(std::move(r));
    }
  } else {
    for (int j = 0; j < f.m; ++j) {
      std::vector<Rational> c(f.n);
      for (int i = 0; i < f.n; ++i) c[i] = p.q(i, j);
      std::vector<Rational> r(f.m, Rational(0));
      r[j] = 1;
      f.left.push_back(std::move(c));
      f.right.push_back(std::move(r));
    }
  }
  f.residual = 0.0;
  return f;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m.d(i, j);
  return e;
}

struct Candidate {
  Eigen::MatrixXd w, h;
  double residual = std::numeric_limits<double>::infinity();
};

double resid(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w, const Eigen::MatrixXd& h) {
  return (v - w * h).norm();
}

// SVD-based non-negative start (positive/negative part split per component).
void init_svd(const Eigen::MatrixXd& v, int k, Eigen::MatrixXd& w, Eigen::MatrixXd& h) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& U = svd.matrixU();
  const auto& V = svd.matrixV();
  const auto& S = svd.singularValues();
  const double mean = std::max(v.mean(), 1e-12);
  w.setConstant(v.rows(), k, std::sqrt(mean / k));
  h.setConstant(k, v.cols(), std::sqrt(mean / k));
  const int kk = std::min<int>(k, static_cast<int>(S.size()));
  for (int t = 0; t < kk; ++t) {
    Eigen::VectorXd up = U.col(t).cwiseMax(0.0), un = (-U.col(t)).cwiseMax(0.0);
    Eigen::VectorXd vp = V.col(t).cwiseMax(0.0), vn = (-V.col(t)).cwiseMax(0.0);
    double pp = up.norm() * vp.norm(), nn = un.norm() * vn.norm();
    Eigen::VectorXd cu = pp >= nn ? up : un;
    Eigen::VectorXd cv = pp >= nn ? vp : vn;
    double norm = std::max(pp >= nn ? pp : nn, 1e-12);
    double scl = std::sqrt(S(t) / norm);
    w.col(t) = (cu * (scl * cv.norm())).cwiseMax(1e-9 * mean);
    h.row(t) = (cv.transpose() * (scl * cu.norm())).cwiseMax(1e-9 * mean);
  }
}

// Column-subset start (successive projection): picks the k columns with the
// largest residual norms and solves the clamped least-squares coefficients.
// Exactly recovers separable inputs, where the optimum sits on the boundary
// that multiplicative updates approach only slowly.
void init_spa(const Eigen::MatrixXd& v, int k, Eigen::MatrixXd& w, Eigen::MatrixXd& h) {
  Eigen::MatrixXd r = v;
  w.resize(v.rows(), k);
  for (int t = 0; t < k; ++t) {
    int best = 0;
    double bestn = -1;
    for (int j = 0; j < r.cols(); ++j) {
      double nj = r.col(j).squaredNorm();
      if (nj > bestn + 1e-15) {
        bestn = nj;
        best = j;
      }
    }
    w.col(t) = v.col(best);
    Eigen::VectorXd u = r.col(best);
    double uu = u.squaredNorm();
    if (uu > 0) r -= u * (u.transpose() * r) / uu;
  }
  h = w.completeOrthogonalDecomposition().solve(v).cwiseMax(0.0);
}

void init_random(const Eigen::MatrixXd& v, int k, std::uint64_t seed, Eigen::MatrixXd& w,
                 Eigen::MatrixXd& h) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  const double scale = std::sqrt(std::max(v.mean(), 1e-12) / k);
  w.resize(v.rows(), k);
  h.resize(k, v.cols());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = scale * unif(rng);
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) h(i, j) = scale * unif(rng);
}

// Multiplicative updates for the Frobenius objective. The residual trace is
// forced monotone: a step that increases it is rolled back and the restart
// stops there.
void run_updates(const Eigen::MatrixXd& v, Candidate& c, const NmfOptions& opts, int restart) {
  const double floor = opts.epsilon_floor;
  double prev = resid(v, c.w, c.h);
  if (opts.on_iteration) opts.on_iteration(restart, 0, prev);
  for (int it = 1; it <= opts.max_iters; ++it) {
    Eigen::MatrixXd w2 = c.w, h2 = c.h;
    h2 = h2.cwiseProduct((w2.transpose() * v).cwiseQuotient(
        ((w2.transpose() * w2) * h2).array().max(0.0).matrix() +
        Eigen::MatrixXd::Constant(h2.rows(), h2.cols(), floor)));
    w2 = w2.cwiseProduct((v * h2.transpose()).cwiseQuotient(
        (w2 * (h2 * h2.transpose())).array().max(0.0).matrix() +
        Eigen::MatrixXd::Constant(w2.rows(), w2.cols(), floor)));
    double r = resid(v, w2, h2);
    if (r > prev) break;  // keep the previous, monotone state
    c.w = std::move(w2);
    c.h = std::move(h2);
    if (opts.on_iteration) opts.on_iteration(restart, it, r);
    bool converged = prev - r <= opts.tol * std::max(prev, 1e-300);
    prev = r;
    if (converged) break;
  }
  c.residual = prev;
}

Factorization to_factorization(const Matrix& p, const Candidate& c) {
  Factorization f;
  f.n = p.rows();
  f.m = p.cols();
  f.k = static_cast<int>(c.w.cols());
  f.backend = Backend::Float;
  for (int h = 0; h < f.k; ++h) {
    std::vector<Rational> lh(f.n), rh(f.m);
    for (int i = 0; i < f.n; ++i) lh[i] = rational_from_double(c.w(i, h));
    for (int j = 0; j < f.m; ++j) rh[j] = rational_from_double(c.h(h, j));
    f.left.push_back(std::move(lh));
    f.right.push_back(std::move(rh));
  }
  f.residual = c.residual;
  return f;
}

}  // namespace

Factorization nmf(const Matrix& p, int k, const NmfOptions& opts) {
  if (p.empty()) fail("BadShape", "empty matrix");
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  const int minnm = std::min(p.rows(), p.cols());
  if (k < 1 || k > minnm) fail("BadK", "k must be in 1..min(n,m)");
  if (opts.restarts < 1 || opts.max_iters < 1 || !(opts.tol > 0) || !(opts.epsilon_floor > 0))
    fail("BadParameter", "factorization options must be positive");

  Eigen::MatrixXd v = to_eigen(p);
  Candidate best;
  auto consider = [&](Candidate c, int restart) {
    run_updates(v, c, opts, restart);
    if (c.residual < best.residual) best = std::move(c);
  };

  Candidate c0;
  init_svd(v, k, c0.w, c0.h);
  consider(std::move(c0), 0);

  Candidate cs;
  init_spa(v, k, cs.w, cs.h);
  consider(std::move(cs), 0);

  if (k == minnm) {
    // trivial exact decomposition as an extra deterministic candidate
    Candidate ct;
    if (p.rows() <= p.cols()) {
      ct.w = Eigen::MatrixXd::Identity(p.rows(), k);
      ct.h = v;
    } else {
      ct.w = v;
      ct.h = Eigen::MatrixXd::Identity(k, p.cols());
    }
    consider(std::move(ct), 0);
  }

  for (int r = 1; r < opts.restarts; ++r) {
    Candidate c;
    init_random(v, k, opts.seed + static_cast<std::uint64_t>(r), c.w, c.h);
    consider(std::move(c), r);
  }
  return to_factorization(p, best);
}

int nnrank_upper(const Matrix& p, double fit_tol, const NmfOptions& opts) {
  if (p.empty()) fail("BadShape", "empty matrix");
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  const double norm = frobenius_norm(p);
  if (norm == 0.0) return 0;
  const int minnm = std::min(p.rows(), p.cols());
  const double thresh = fit_tol * norm;
  for (int k = 1; k < minnm; ++k)
    if (nmf(p, k, opts).residual <= thresh) return k;
  return minnm;  // trivial decomposition is exact
}

std::string factorization_to_json(const Factorization& f) {
  std::string out = "{\"k\": " + std::to_string(f.k) + ", \"left\": [";
  for (int h = 0; h < f.k; ++h) {
    if (h) out += ", ";
    out += '[';
    for (int i = 0; i < f.n; ++i) {
      if (i) out += ", ";
      out += format_rational(f.left[h][i]);
    }
    out += ']';
  }
  out += "], \"right\": [";
  for (int h = 0; h < f.k; ++h) {
    if (h) out += ", ";
    out += '[';
    for (int j = 0; j < f.m; ++j) {
      if (j) out += ", ";
      out += format_rational(f.right[h][j]);
    }
    out += ']';
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", f.residual);
  out += "], \"residual\": ";
  out += buf;
  out += "}";
  return out;
}

}  // namespace nnr

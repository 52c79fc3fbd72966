#include "nnr/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace nnr {

Matrix::Matrix(int rows, int cols, Backend backend)
    : rows_(rows), cols_(cols), backend_(backend) {
  if (rows < 0 || cols < 0) fail("BadShape", "negative dimensions");
  a_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, Backend backend) {
  if (rows.empty() || rows.front().empty()) fail("BadShape", "matrix needs at least one entry");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), backend);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols())
      fail("BadShape", "ragged rows in matrix literal");
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows, Backend backend) {
  if (rows.empty() || rows.front().empty()) fail("BadShape", "matrix needs at least one entry");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), backend);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols())
      fail("BadShape", "ragged rows in matrix literal");
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::to_backend(Backend b) const {
  Matrix out = *this;
  if (b == Backend::Float && backend_ == Backend::Exact) {
    for (auto& v : out.a_) v = rational_from_double(to_double(v));
  }
  out.backend_ = b;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_, backend_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, q(i, j));
  return out;
}

bool Matrix::all_nonneg() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& v) { return v >= 0; });
}

Rational Matrix::column_sum(int j) const {
  Rational s = 0;
  for (int i = 0; i < rows_; ++i) s += q(i, j);
  return s;
}

bool Matrix::column_is_zero(int j) const {
  for (int i = 0; i < rows_; ++i)
    if (q(i, j) != 0) return false;
  return true;
}

namespace {

Backend combine(const Matrix& a, const Matrix& b) {
  return (a.is_exact() && b.is_exact()) ? Backend::Exact : Backend::Float;
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) fail("ShapeMismatch", "matrix dimensions differ");
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m.d(i, j);
  return e;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols(), combine(a, b));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (out.is_exact())
        out.set(i, j, a.q(i, j) + b.q(i, j));
      else
        out.set(i, j, a.d(i, j) + b.d(i, j));
    }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols(), combine(a, b));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (out.is_exact())
        out.set(i, j, a.q(i, j) - b.q(i, j));
      else
        out.set(i, j, a.d(i, j) - b.d(i, j));
    }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail("ShapeMismatch", "inner dimensions differ");
  Matrix out(a.rows(), b.cols(), combine(a, b));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      if (out.is_exact()) {
        Rational s = 0;
        for (int t = 0; t < a.cols(); ++t) s += a.q(i, t) * b.q(t, j);
        out.set(i, j, s);
      } else {
        double s = 0;
        for (int t = 0; t < a.cols(); ++t) s += a.d(i, t) * b.d(t, j);
        out.set(i, j, s);
      }
    }
  return out;
}

Matrix scale(const Matrix& a, const Rational& s) {
  Matrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.is_exact())
        out.set(i, j, a.q(i, j) * s);
      else
        out.set(i, j, a.d(i, j) * to_double(s));
    }
  return out;
}

Rational frobenius_distance_sq(const Matrix& p, const Matrix& n) {
  require_same_shape(p, n);
  Rational s = 0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      Rational d = p.q(i, j) - n.q(i, j);
      s += d * d;
    }
  return s;
}

double frobenius_distance(const Matrix& p, const Matrix& n) {
  require_same_shape(p, n);
  if (p.is_exact() && n.is_exact()) return std::sqrt(to_double(frobenius_distance_sq(p, n)));
  double s = 0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      double d = p.d(i, j) - n.d(i, j);
      s += d * d;
    }
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& p) {
  double s = 0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      double v = p.d(i, j);
      s += v * v;
    }
  return std::sqrt(s);
}

ScalingDiag scaling_factors(const Matrix& p) {
  if (p.empty()) fail("BadShape", "empty matrix");
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  ScalingDiag sd;
  sd.factors.reserve(p.cols());
  for (int j = 0; j < p.cols(); ++j) {
    Rational s = p.column_sum(j);
    if (s == 0) fail("ZeroColumn", "column " + std::to_string(j) + " is zero");
    sd.factors.push_back(s);
  }
  return sd;
}

Matrix to_stochastic(const Matrix& p) {
  ScalingDiag sd = scaling_factors(p);
  Matrix out(p.rows(), p.cols(), p.backend());
  for (int j = 0; j < p.cols(); ++j)
    for (int i = 0; i < p.rows(); ++i) {
      if (p.is_exact())
        out.set(i, j, p.q(i, j) / sd.factors[j]);
      else
        out.set(i, j, p.d(i, j) / to_double(sd.factors[j]));
    }
  return out;
}

namespace {

// Fraction-free elimination over the integers after clearing row denominators.
int rank_exact(const Matrix& p) {
  const int n = p.rows(), m = p.cols();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(m));
  for (int i = 0; i < n; ++i) {
    BigInt l = 1;
    for (int j = 0; j < m; ++j)
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(p.q(i, j)));
    for (int j = 0; j < m; ++j) {
      const Rational& v = p.q(i, j);
      a[i][j] = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
    }
  }
  int r = 0;
  BigInt prev = 1;
  for (int c = 0; c < m && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    for (int i = r + 1; i < n; ++i) {
      for (int j = c + 1; j < m; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

RankInfo rank_float(const Matrix& p, double tau) {
  Eigen::MatrixXd e = to_eigen(p);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(e);
  const int k = static_cast<int>(std::min(e.rows(), e.cols()));
  RankInfo info;
  if (k == 0) return info;
  Eigen::VectorXd diag = qr.matrixR().diagonal().head(k).cwiseAbs();
  info.largest_pivot = diag(0);
  if (info.largest_pivot == 0.0) return info;
  for (int i = 0; i < k; ++i) {
    if (diag(i) > tau * info.largest_pivot) {
      info.rank = i + 1;
      info.smallest_retained_pivot = diag(i);
    } else {
      break;
    }
  }
  return info;
}

}  // namespace

RankInfo rank_info(const Matrix& p, double tau_rank) {
  if (p.empty()) return {};
  if (p.is_exact()) {
    RankInfo info;
    info.rank = rank_exact(p);
    return info;
  }
  return rank_float(p, tau_rank);
}

int rank(const Matrix& p, double tau_rank) { return rank_info(p, tau_rank).rank; }

std::vector<Matrix> sample_ball(const BallSpec& spec) {
  if (!(spec.radius > 0.0)) fail("RadiusNonPositive", "ball radius must be > 0");
  if (spec.count <= 0) fail("BadParameter", "sample count must be > 0");
  if (!spec.center.all_nonneg()) fail("NegativeEntry", "ball center must be non-negative");

  const int n = spec.center.rows(), m = spec.center.cols();
  std::vector<double> center(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) center[static_cast<std::size_t>(i) * m + j] = spec.center.d(i, j);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<Matrix> out;
  out.reserve(spec.count);
  std::vector<double> dir(center.size());
  std::vector<double> cand(center.size());
  const long max_tries = 1000000L * spec.count;
  long tries = 0;
  while (static_cast<int>(out.size()) < spec.count) {
    if (++tries > max_tries)
      fail("RejectionFailed", "could not sample the non-negative orthant at this radius");
    double norm2 = 0;
    for (auto& v : dir) {
      v = gauss(rng);
      norm2 += v * v;
    }
    double r = unif(rng) * spec.radius;
    if (norm2 == 0) continue;
    double sc = r / std::sqrt(norm2);
    bool ok = true;
    for (std::size_t t = 0; t < cand.size(); ++t) {
      cand[t] = center[t] + sc * dir[t];
      if (cand[t] < 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Matrix s(n, m, Backend::Float);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) s.set(i, j, cand[static_cast<std::size_t>(i) * m + j]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nnr

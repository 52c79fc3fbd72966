#pragma once

#include "nnr/errors.hpp"
#include "nnr/rational.hpp"

#include <cstdint>
#include <vector>

namespace nnr {

// Default thresholds. The float backend decides sign/rank questions against
// these; the exact backend uses none.
inline constexpr double kTauRank = 1e-9;  // relative to the largest pivot
inline constexpr double kTauGeo = 1e-9;
inline constexpr double kTauFit = 1e-7;  // relative to the Frobenius norm

enum class Backend { Exact, Float };

// Dense n x m matrix. Entries are stored as exact rationals on both backends
// (every double is a dyadic rational, so Float entries are stored losslessly);
// the backend tag selects which arithmetic the operations use.
class Matrix {
 public:
  Matrix() = default;  // empty sentinel, 0 x 0
  Matrix(int rows, int cols, Backend backend = Backend::Exact);

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows,
                          Backend backend = Backend::Exact);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows,
                          Backend backend = Backend::Float);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::Exact; }

  const Rational& q(int i, int j) const { return a_[idx(i, j)]; }
  double d(int i, int j) const { return to_double(a_[idx(i, j)]); }
  void set(int i, int j, const Rational& v) { a_[idx(i, j)] = v; }
  void set(int i, int j, double v) { a_[idx(i, j)] = rational_from_double(v); }

  // Float conversion snaps every entry through double; Exact keeps values.
  Matrix to_backend(Backend b) const;
  Matrix transposed() const;

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool all_nonneg() const;
  Rational column_sum(int j) const;
  bool column_is_zero(int j) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.backend_ == b.backend_ && a.a_ == b.a_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  Backend backend_ = Backend::Exact;
  std::vector<Rational> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, const Rational& s);

// Column 1-norms; rejects zero columns and negative entries.
struct ScalingDiag {
  std::vector<Rational> factors;
};

struct BallSpec {
  Matrix center;
  double radius = 0.0;
  int count = 0;
  std::uint64_t seed = 0;
};

double frobenius_distance(const Matrix& p, const Matrix& n);
Rational frobenius_distance_sq(const Matrix& p, const Matrix& n);
double frobenius_norm(const Matrix& p);

ScalingDiag scaling_factors(const Matrix& p);
Matrix to_stochastic(const Matrix& p);

struct RankInfo {
  int rank = 0;
  double largest_pivot = 0.0;            // float path only
  double smallest_retained_pivot = 0.0;  // float path only
};

int rank(const Matrix& p, double tau_rank = kTauRank);
RankInfo rank_info(const Matrix& p, double tau_rank = kTauRank);

// `count` matrices at Frobenius distance < radius from the center, kept in
// the non-negative orthant by rejection; Float backend; deterministic in seed.
std::vector<Matrix> sample_ball(const BallSpec& spec);

}  // namespace nnr

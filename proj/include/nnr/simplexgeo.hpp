#pragma once

#include "nnr/factorize.hpp"
#include "nnr/geometry.hpp"
#include "nnr/matrix.hpp"

#include <optional>
#include <vector>

namespace nnr {

// Columns of a stochastic matrix with the last coordinate dropped; points of
// the standard simplex of dimension rows-1.
struct PointCloud {
  int dim = 0;
  std::vector<std::vector<Rational>> points;
  std::vector<int> labels;
  Backend backend = Backend::Exact;
};

// 2D chart of the affine hull H of the stochastic columns, kept in the
// ambient column space (origin on the sum-1 plane, basis in the sum-0 space).
// Exact charts use an orthogonal unnormalized basis; float charts are
// orthonormal in the simplex-plane metric, hence isometric.
struct Chart {
  std::vector<Rational> origin, u, v;
  bool orthonormal = false;
};

struct NestedInstance {
  std::vector<geo::Vec2<Rational>> inner;  // chart images of the columns
  std::vector<geo::Vec2<Rational>> outer;  // simplex section, convex ccw
  Chart chart;
  std::vector<int> labels;
  Backend backend = Backend::Exact;
};

struct RankResult {
  int ordinary_rank = 0;
  int nn_lower = 0;
  int nn_upper = 0;
  bool exact = false;
  std::optional<Factorization> witness;
};

struct MinNested {
  int k = 0;
  std::vector<geo::Vec2<Rational>> witness;  // chart coords of one optimal vertex set
};

PointCloud project_columns(const Matrix& p, double tau_geo = kTauGeo);

// Is q a convex combination of the generators? Exact LP over rationals, or
// tolerance LP when backend is Float.
bool point_in_hull(const std::vector<Rational>& q,
                   const std::vector<std::vector<Rational>>& generators,
                   Backend backend = Backend::Exact, double tau_geo = kTauGeo);

NestedInstance section_polygon(const Matrix& p, double tau_rank = kTauRank,
                               double tau_geo = kTauGeo);

MinNested min_nested_polygon(const NestedInstance& inst, double tau_geo = kTauGeo);

struct NnRankOptions {
  double fit_tol = kTauFit;
  double tau_rank = kTauRank;
  double tau_geo = kTauGeo;
  bool want_witness = true;
  NmfOptions nmf;
};

// Decision ladder for the non-negative rank. Exact outcomes carry a witness
// factorization that reconstructs the input; on the float backend the same
// decisions are made against the geometric tolerance.
RankResult nonneg_rank(const Matrix& p, const NnRankOptions& opts = {});

std::string rank_result_to_json(const RankResult& r, bool include_witness = true);

}  // namespace nnr

#pragma once

#include "nnr/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nnr {

// Parameter point of the dyadic-sum map: k blocks (x_h in R^n, y_h in R^m),
// flattened as (x_1, y_1, ..., x_k, y_k).
struct ParamPoint {
  int n = 0, m = 0, k = 0;
  Matrix x;  // k x n, row h = x_h
  Matrix y;  // k x m, row h = y_h
};

ParamPoint make_param_point(const Matrix& x, const Matrix& y);
ParamPoint param_point_from_json(const std::string& text);
std::string param_point_to_json(const ParamPoint& p);

// f(p) = sum_h x_h y_h^t, an n x m matrix.
Matrix evaluate_f(const ParamPoint& p);

// Closed-form Jacobian of f at p: nm x k(n+m), rows flatten f row-major,
// columns follow the parameter flattening order.
Matrix jacobian_matrix(const ParamPoint& p);

struct JacobianReport {
  int jac_rank = 0;
  int target_rank = 0;  // k(n+m-k)
  bool maximal = false;
  bool hypotheses_hold = false;  // x rows independent and y rows independent
  bool positive_point = false;
  double smallest_retained_pivot = 0.0;  // float path only
};

JacobianReport maximal_rank_check(const ParamPoint& p, double tau_rank = kTauRank);

struct CertificateReport {
  bool granted = false;
  int jac_rank = 0;
  int target = 0;
  bool positive = false;
  bool hypotheses = false;
  bool maximal = false;
  int k = 0;
  int rkplus = -1;  // the non-negative rank the certificate was checked against
  std::vector<std::string> reasons;
};

// Grants a local isorank certificate: every equal-ordinary-rank matrix near P
// keeps the same non-negative rank. Conditions: f(p) = P, strictly positive
// coordinates, maximal Jacobian rank, and k equal to the (certified or
// asserted) non-negative rank of P.
CertificateReport isorank_certificate(const Matrix& P, const ParamPoint& p,
                                      std::optional<int> asserted_rkplus = std::nullopt,
                                      double fit_tol = kTauFit);

std::string certificate_to_json(const CertificateReport& r);
std::string jacobian_report_to_json(const JacobianReport& r);

}  // namespace nnr

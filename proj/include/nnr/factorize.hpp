#pragma once

#include "nnr/matrix.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nnr {

// Sum of k non-negative dyads left_h * right_h^t approximating an n x m target.
struct Factorization {
  int n = 0, m = 0, k = 0;
  std::vector<std::vector<Rational>> left;   // k vectors of length n
  std::vector<std::vector<Rational>> right;  // k vectors of length m
  double residual = 0.0;                     // Frobenius distance to the target at creation
  Backend backend = Backend::Float;
};

struct NmfOptions {
  int restarts = 32;
  int max_iters = 2000;
  double tol = 1e-10;  // relative residual improvement cutoff
  std::uint64_t seed = 0;
  double epsilon_floor = 1e-12;
  // test hook: called as (restart, iteration, residual)
  std::function<void(int, int, double)> on_iteration;
};

Matrix reconstruct(const Factorization& f);

// Best-of-restarts multiplicative-update factorization, Frobenius objective.
// Restart 0 starts from an SVD-based non-negative split (plus the trivial
// column/row decomposition when k == min(n,m)); the rest are random with
// per-restart seeds, so the result is deterministic in opts.seed.
Factorization nmf(const Matrix& p, int k, const NmfOptions& opts = {});

// Smallest k whose best fit has residual <= fit_tol * ||P||_F. The trivial
// decomposition at k = min(n,m) always succeeds, so this never fails.
int nnrank_upper(const Matrix& p, double fit_tol = kTauFit, const NmfOptions& opts = {});

// Exact trivial decomposition with min(n,m) dyads (rows or columns).
Factorization trivial_factorization(const Matrix& p);

std::string factorization_to_json(const Factorization& f);

}  // namespace nnr

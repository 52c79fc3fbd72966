#pragma once

#include "nnr/matrix.hpp"
#include "nnr/simplexgeo.hpp"

#include <string>
#include <vector>

namespace nnr {

enum class Family { Peps, Meps, B1, B2, CohenRothblum };

Family family_from_name(const std::string& name);
std::string family_name(Family f);

struct FamilySpec {
  Family name = Family::B1;
  Rational epsilon = 0;  // ignored by the constant families
  Backend backend = Backend::Exact;
};

Matrix build_family(const FamilySpec& spec);

// Columns moved a fraction delta toward the column barycenter.
Matrix barycentric(const Matrix& p, const Rational& delta);

struct ProbeSample {
  double distance = 0.0;
  int rank = 0;
  int nn_lower = 0;
  int nn_upper = 0;
  bool violation = false;
};

struct ProbeReport {
  int samples = 0;
  int violations = 0;
  int min_rkplus = 0;  // smallest per-sample lower bound
  int max_rkplus = 0;  // largest per-sample upper bound
  int baseline_rkplus = 0;
  double radius = 0.0;
  bool radius_out_of_scope = false;  // radius too large for a local statement
  std::string predicate;
  std::vector<ProbeSample> details;
};

// Ball samples around P; a violation is a sample whose certified lower bound
// drops below rk+(P).
ProbeReport semicontinuity_probe(const Matrix& p, double radius, int samples, std::uint64_t seed);

// Bisection of the exact rank-3 triangle decision over the family parameter.
// The predicate must flip exactly once between lo and hi (64-point pre-scan).
double critical_epsilon(Family name, const Rational& lo, const Rational& hi, double tol);
double critical_epsilon(const std::function<bool(const Rational&)>& predicate, const Rational& lo,
                        const Rational& hi, double tol);

struct MidpointReport {
  RankResult a, b, mid;
};

MidpointReport midpoint_probe(const Matrix& a, const Matrix& b);

std::string probe_report_to_json(const ProbeReport& r, bool details = true);
std::string midpoint_report_to_json(const MidpointReport& r);

}  // namespace nnr

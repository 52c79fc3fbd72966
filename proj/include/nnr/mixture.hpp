#pragma once

#include "nnr/matrix.hpp"
#include "nnr/perturb.hpp"
#include "nnr/simplexgeo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nnr {

// Two-way probability table: non-negative entries with total mass one.
struct JointTable {
  Matrix matrix;
  Rational original_mass = 1;  // mass before normalization, when requested
};

// Validates the table constraints; with normalize=true rescales to mass one
// and records the original mass.
JointTable make_joint_table(const Matrix& m, bool normalize = false);

// Largest absolute 2x2 minor; zero exactly when the table is a product
// distribution (rank <= 1).
Rational independence_residual(const JointTable& t);

struct MixtureSpec {
  std::vector<Rational> alpha;              // k weights, sum 1
  std::vector<std::vector<Rational>> cols;  // k stochastic n-vectors
  std::vector<std::vector<Rational>> rows;  // k stochastic m-vectors
  Backend backend = Backend::Exact;
};

JointTable mixture_build(const MixtureSpec& spec);

enum class Membership { Member, NonMember, Unknown };

struct MembershipReport {
  Membership status = Membership::Unknown;
  int k = 0;
  RankResult rank_result;
  std::optional<MixtureSpec> witness;
};

// Does the table lie in the mixture of k independence models, i.e. is its
// non-negative rank at most k?
MembershipReport model_membership(const JointTable& t, int k);

// Around a table with rank k but non-negative rank above k, no nearby sample
// may certify rank = nonnegative rank = k; counts any that do as violations.
ProbeReport non_density_probe(const JointTable& t, int k, double radius, int samples,
                              std::uint64_t seed);

std::string membership_to_json(const MembershipReport& r);
std::string mixture_spec_to_json(const MixtureSpec& s);

}  // namespace nnr

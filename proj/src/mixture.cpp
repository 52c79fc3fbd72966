#include "nnr/mixture.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace nnr {

JointTable make_joint_table(const Matrix& m, bool normalize) {
  if (m.empty()) fail("BadShape", "empty table");
  if (!m.all_nonneg()) fail("InvalidDistribution", "table has a negative entry");
  Rational mass = 0;
  for (int j = 0; j < m.cols(); ++j) mass += m.column_sum(j);
  if (mass == 0) fail("InvalidDistribution", "table has zero mass");

  JointTable t;
  if (normalize) {
    t.matrix = m.is_exact() ? scale(m, Rational(1) / mass)
                            : scale(m, rational_from_double(1.0 / to_double(mass)));
    t.original_mass = mass;
    return t;
  }
  bool unit = m.is_exact() ? (mass == 1) : (std::abs(to_double(mass) - 1.0) <= 1e-12);
  if (!unit) fail("InvalidDistribution", "table mass is not one (pass normalize)");
  t.matrix = m;
  return t;
}

Rational independence_residual(const JointTable& t) {
  const Matrix& m = t.matrix;
  Rational best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int k = i + 1; k < m.rows(); ++k)
      for (int j = 0; j < m.cols(); ++j)
        for (int h = j + 1; h < m.cols(); ++h) {
          Rational minor = m.q(i, j) * m.q(k, h) - m.q(i, h) * m.q(k, j);
          if (minor < 0) minor = -minor;
          if (minor > best) best = minor;
        }
  return best;
}

namespace {

void check_distribution(const std::vector<Rational>& v, const std::string& what) {
  Rational s = 0;
  for (const auto& x : v) {
    if (x < 0) fail("InvalidDistribution", what + " has a negative component");
    s += x;
  }
  if (s != 1) fail("InvalidDistribution", what + " does not sum to one");
}

}  // namespace

JointTable mixture_build(const MixtureSpec& spec) {
  const std::size_t k = spec.alpha.size();
  if (k == 0 || spec.cols.size() != k || spec.rows.size() != k)
    fail("InvalidDistribution", "mixture needs k weights, k column and k row distributions");
  check_distribution(spec.alpha, "alpha");
  for (const auto& c : spec.cols) check_distribution(c, "a column distribution");
  for (const auto& r : spec.rows) check_distribution(r, "a row distribution");

  const int n = static_cast<int>(spec.cols[0].size());
  const int m = static_cast<int>(spec.rows[0].size());
  Matrix out(n, m, Backend::Exact);
  for (std::size_t h = 0; h < k; ++h) {
    if (static_cast<int>(spec.cols[h].size()) != n || static_cast<int>(spec.rows[h].size()) != m)
      fail("InvalidDistribution", "mixture component dimensions differ");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        out.set(i, j, out.q(i, j) + spec.alpha[h] * spec.cols[h][i] * spec.rows[h][j]);
  }
  if (spec.backend == Backend::Float) out = out.to_backend(Backend::Float);
  JointTable t;
  t.matrix = std::move(out);
  return t;
}

namespace {

// rk+ is invariant under deleting zero rows and columns, which joint tables
// may legitimately contain.
struct Support {
  std::vector<int> rows, cols;
  Matrix dense;
};

Support nonzero_support(const Matrix& m) {
  Support s;
  for (int i = 0; i < m.rows(); ++i) {
    bool nz = false;
    for (int j = 0; j < m.cols() && !nz; ++j) nz = m.q(i, j) != 0;
    if (nz) s.rows.push_back(i);
  }
  for (int j = 0; j < m.cols(); ++j)
    if (!m.column_is_zero(j)) s.cols.push_back(j);
  s.dense = Matrix(static_cast<int>(s.rows.size()), static_cast<int>(s.cols.size()), m.backend());
  for (std::size_t a = 0; a < s.rows.size(); ++a)
    for (std::size_t b = 0; b < s.cols.size(); ++b)
      s.dense.set(static_cast<int>(a), static_cast<int>(b), m.q(s.rows[a], s.cols[b]));
  return s;
}

// Rescales a factorization of the table into mixture form: stochastic dyad
// factors with the mass moved into the weights, then weights renormalized.
std::optional<MixtureSpec> witness_from_factorization(const Factorization& f, const Support& sup,
                                                      int n, int m, int k) {
  MixtureSpec w;
  w.backend = f.backend;
  Rational total = 0;
  for (int h = 0; h < f.k; ++h) {
    Rational cn = 0, rn = 0;
    for (const auto& v : f.left[h]) cn += v;
    for (const auto& v : f.right[h]) rn += v;
    Rational a = cn * rn;
    std::vector<Rational> col(n, Rational(0)), row(m, Rational(0));
    if (a == 0) {
      // empty dyad: keep a zero weight with uniform factors
      col.assign(n, Rational(1, n));
      row.assign(m, Rational(1, m));
    } else {
      for (std::size_t i = 0; i < f.left[h].size(); ++i) col[sup.rows[i]] = f.left[h][i] / cn;
      for (std::size_t j = 0; j < f.right[h].size(); ++j) row[sup.cols[j]] = f.right[h][j] / rn;
    }
    w.alpha.push_back(a);
    w.cols.push_back(std::move(col));
    w.rows.push_back(std::move(row));
    total += a;
  }
  while (static_cast<int>(w.alpha.size()) < k) {
    w.alpha.push_back(0);
    w.cols.push_back(std::vector<Rational>(n, Rational(1, n)));
    w.rows.push_back(std::vector<Rational>(m, Rational(1, m)));
  }
  if (total == 0) return std::nullopt;
  for (auto& a : w.alpha) a /= total;
  if (w.backend == Backend::Float) {
    for (auto& a : w.alpha) a = rational_from_double(to_double(a));
    for (auto& c : w.cols)
      for (auto& v : c) v = rational_from_double(to_double(v));
    for (auto& r : w.rows)
      for (auto& v : r) v = rational_from_double(to_double(v));
  }
  return w;
}

}  // namespace

MembershipReport model_membership(const JointTable& t, int k) {
  MembershipReport rep;
  rep.k = k;
  if (k < 1) {
    rep.status = Membership::NonMember;
    return rep;
  }
  Support sup = nonzero_support(t.matrix);
  if (sup.rows.empty()) {
    rep.status = Membership::Unknown;
    return rep;
  }
  NnRankOptions opts;
  rep.rank_result = nonneg_rank(sup.dense, opts);
  const RankResult& rr = rep.rank_result;

  if (rr.nn_lower > k) {
    rep.status = Membership::NonMember;
    return rep;
  }
  if (rr.nn_upper <= k && (rr.exact || rr.witness)) {
    rep.status = Membership::Member;
    if (rr.witness)
      rep.witness =
          witness_from_factorization(*rr.witness, sup, t.matrix.rows(), t.matrix.cols(), k);
    return rep;
  }
  // bounds straddle k: try an NMF fit at level k
  double scale = std::max(1.0, frobenius_norm(sup.dense));
  if (k <= std::min(sup.dense.rows(), sup.dense.cols())) {
    Factorization f = nmf(sup.dense, k, opts.nmf);
    if (f.residual <= opts.fit_tol * scale) {
      rep.status = Membership::Member;
      rep.witness = witness_from_factorization(f, sup, t.matrix.rows(), t.matrix.cols(), k);
      return rep;
    }
  }
  rep.status = Membership::Unknown;
  return rep;
}

ProbeReport non_density_probe(const JointTable& t, int k, double radius, int samples,
                              std::uint64_t seed) {
  NnRankOptions opts;
  opts.want_witness = false;
  RankResult base = nonneg_rank(t.matrix, opts);
  if (base.ordinary_rank != k || !(base.nn_lower > k))
    fail("HypothesisNotMet", "need rank = k and certified rk+ > k");

  ProbeReport rep;
  rep.samples = samples;
  rep.radius = radius;
  rep.baseline_rkplus = base.nn_lower;
  rep.predicate = "no sample with rank = k and certified rk+ = k";
  rep.radius_out_of_scope = radius > 0.1 * frobenius_norm(t.matrix);

  std::vector<Matrix> ball = sample_ball({t.matrix, radius, samples, seed});
  rep.min_rkplus = std::numeric_limits<int>::max();
  rep.max_rkplus = 0;
  for (const auto& s : ball) {
    RankResult rr = nonneg_rank(s, opts);
    ProbeSample ps;
    ps.distance = frobenius_distance(t.matrix.to_backend(Backend::Float), s);
    ps.rank = rr.ordinary_rank;
    ps.nn_lower = rr.nn_lower;
    ps.nn_upper = rr.nn_upper;
    ps.violation = (rr.ordinary_rank == k) && rr.exact && rr.nn_upper == k;
    rep.min_rkplus = std::min(rep.min_rkplus, rr.nn_lower);
    rep.max_rkplus = std::max(rep.max_rkplus, rr.nn_upper);
    if (ps.violation) ++rep.violations;
    rep.details.push_back(ps);
  }
  if (rep.details.empty()) rep.min_rkplus = 0;
  return rep;
}

std::string mixture_spec_to_json(const MixtureSpec& s) {
  auto vec = [](const std::vector<Rational>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += format_rational(v[i]);
    }
    return out + "]";
  };
  std::string out = "{\"alpha\": " + vec(s.alpha) + ", \"cols\": [";
  for (std::size_t h = 0; h < s.cols.size(); ++h) {
    if (h) out += ", ";
    out += vec(s.cols[h]);
  }
  out += "], \"rows\": [";
  for (std::size_t h = 0; h < s.rows.size(); ++h) {
    if (h) out += ", ";
    out += vec(s.rows[h]);
  }
  return out + "]}";
}

std::string membership_to_json(const MembershipReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  switch (r.status) {
    case Membership::Member: j["status"] = "Member"; break;
    case Membership::NonMember: j["status"] = "NonMember"; break;
    case Membership::Unknown: j["status"] = "Unknown"; break;
  }
  j["rank"] = r.rank_result.ordinary_rank;
  j["nn_lower"] = r.rank_result.nn_lower;
  j["nn_upper"] = r.rank_result.nn_upper;
  j["exact"] = r.rank_result.exact;
  if (r.witness) j["witness"] = nlohmann::json::parse(mixture_spec_to_json(*r.witness));
  return j.dump();
}

}  // namespace nnr

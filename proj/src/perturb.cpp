#include "nnr/perturb.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace nnr {

Family family_from_name(const std::string& name) {
  std::string s;
  for (char c : name)
    if (c != '_' && c != '-') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "peps") return Family::Peps;
  if (s == "meps") return Family::Meps;
  if (s == "b1") return Family::B1;
  if (s == "b2") return Family::B2;
  if (s == "cohenrothblum" || s == "cr") return Family::CohenRothblum;
  fail("BadParameter", "unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Peps: return "Peps";
    case Family::Meps: return "Meps";
    case Family::B1: return "B1";
    case Family::B2: return "B2";
    case Family::CohenRothblum: return "CohenRothblum";
  }
  return "?";
}

namespace {

Matrix b1_matrix() {
  return Matrix::from_rows(std::vector<std::vector<Rational>>{
      {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
}

Matrix b2_matrix() {
  return Matrix::from_rows(std::vector<std::vector<Rational>>{
      {1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 1}});
}

}  // namespace

Matrix build_family(const FamilySpec& spec) {
  const Rational& e = spec.epsilon;
  Matrix out;
  switch (spec.name) {
    case Family::B1:
    case Family::CohenRothblum:
      out = b1_matrix();
      break;
    case Family::B2:
      out = b2_matrix();
      break;
    case Family::Peps: {
      if (e < -1 || e > 1) fail("BadParameter", "Peps needs |epsilon| <= 1");
      Matrix m = Matrix::from_rows(std::vector<std::vector<Rational>>{
          {2, 0, 2, 1 - e}, {0, 2, 0, 1 + e}, {0, 0, 2, 1 + e}, {2, 2, 0, 1 - e}});
      out = scale(m, Rational(1, 4));
      break;
    }
    case Family::Meps: {
      if (e < 0) fail("BadParameter", "Meps needs epsilon >= 0");
      Matrix m = Matrix::from_rows(std::vector<std::vector<Rational>>{{1 + e, e, 1 + e, e},
                                                                      {1 + e, e, e, 1 + e},
                                                                      {e, 1 + e, 1 + e, e},
                                                                      {e, 1 + e, e, 1 + e}});
      out = scale(m, Rational(1) / (2 * (1 + 2 * e)));
      break;
    }
  }
  return spec.backend == Backend::Exact ? out : out.to_backend(Backend::Float);
}

Matrix barycentric(const Matrix& p, const Rational& delta) {
  if (delta < 0 || delta > 1) fail("DeltaOutOfRange", "delta must lie in [0,1]");
  if (!p.all_nonneg()) fail("NegativeEntry", "matrix has a negative entry");
  for (int j = 0; j < p.cols(); ++j)
    if (p.column_is_zero(j)) fail("ZeroColumn", "column " + std::to_string(j) + " is zero");

  std::vector<Rational> b(p.rows(), Rational(0));
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) b[i] += p.q(i, j);
    b[i] /= p.cols();
  }
  Matrix out(p.rows(), p.cols(), p.backend());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      if (p.is_exact())
        out.set(i, j, p.q(i, j) + delta * (b[i] - p.q(i, j)));
      else
        out.set(i, j, p.d(i, j) + to_double(delta) * (to_double(b[i]) - p.d(i, j)));
    }
  return out;
}

ProbeReport semicontinuity_probe(const Matrix& p, double radius, int samples, std::uint64_t seed) {
  NnRankOptions opts;
  opts.want_witness = false;
  RankResult base = nonneg_rank(p, opts);

  ProbeReport rep;
  rep.samples = samples;
  rep.radius = radius;
  rep.baseline_rkplus = base.nn_lower;
  rep.predicate = "sample nn_lower >= baseline rk+";
  rep.radius_out_of_scope = radius > 0.1 * frobenius_norm(p);

  std::vector<Matrix> ball = sample_ball({p, radius, samples, seed});
  rep.min_rkplus = std::numeric_limits<int>::max();
  rep.max_rkplus = 0;
  for (const auto& s : ball) {
    RankResult rr = nonneg_rank(s, opts);
    ProbeSample ps;
    ps.distance = frobenius_distance(p.to_backend(Backend::Float), s);
    ps.rank = rr.ordinary_rank;
    ps.nn_lower = rr.nn_lower;
    ps.nn_upper = rr.nn_upper;
    ps.violation = rr.nn_lower < base.nn_lower;
    rep.min_rkplus = std::min(rep.min_rkplus, rr.nn_lower);
    rep.max_rkplus = std::max(rep.max_rkplus, rr.nn_upper);
    if (ps.violation) ++rep.violations;
    rep.details.push_back(ps);
  }
  if (rep.details.empty()) rep.min_rkplus = 0;
  return rep;
}

namespace {

bool triangle_predicate(Family name, const Rational& eps) {
  FamilySpec spec{name, eps, Backend::Exact};
  RankResult rr = nonneg_rank(build_family(spec), [] {
    NnRankOptions o;
    o.want_witness = false;
    return o;
  }());
  return rr.exact && rr.nn_upper == 3;
}

}  // namespace

double critical_epsilon(Family name, const Rational& lo, const Rational& hi, double tol) {
  return critical_epsilon([name](const Rational& e) { return triangle_predicate(name, e); }, lo,
                          hi, tol);
}

double critical_epsilon(const std::function<bool(const Rational&)>& predicate, const Rational& lo,
                        const Rational& hi, double tol) {
  if (!(lo < hi)) fail("BadParameter", "need lo < hi");
  if (!(tol > 0)) fail("BadParameter", "need tol > 0");

  const int grid = 64;
  std::vector<bool> val(grid);
  for (int i = 0; i < grid; ++i) {
    Rational t = lo + (hi - lo) * i / (grid - 1);
    val[i] = predicate(t);
  }
  int flips = 0, at = -1;
  for (int i = 0; i + 1 < grid; ++i)
    if (val[i] != val[i + 1]) {
      ++flips;
      at = i;
    }
  if (flips == 0) fail("NoFlip", "predicate does not change over [lo,hi]");
  if (flips > 1) fail("NonMonotone", "predicate flips more than once over [lo,hi]");

  Rational a = lo + (hi - lo) * at / (grid - 1);
  Rational b = lo + (hi - lo) * (at + 1) / (grid - 1);
  bool va = val[at];
  while (to_double(b - a) > tol) {
    Rational mid = (a + b) / 2;
    if (predicate(mid) == va)
      a = mid;
    else
      b = mid;
  }
  return to_double((a + b) / 2);
}

MidpointReport midpoint_probe(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) fail("ShapeMismatch", "midpoint needs equal shapes");
  Matrix mid = scale(a + b, Rational(1, 2));
  NnRankOptions opts;
  MidpointReport rep;
  rep.a = nonneg_rank(a, opts);
  rep.b = nonneg_rank(b, opts);
  rep.mid = nonneg_rank(mid, opts);
  return rep;
}

std::string probe_report_to_json(const ProbeReport& r, bool details) {
  nlohmann::json j;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["min_rkplus"] = r.min_rkplus;
  j["max_rkplus"] = r.max_rkplus;
  j["baseline_rkplus"] = r.baseline_rkplus;
  j["radius"] = r.radius;
  j["radius_out_of_scope"] = r.radius_out_of_scope;
  j["predicate"] = r.predicate;
  if (details) {
    j["details"] = nlohmann::json::array();
    for (const auto& s : r.details) {
      nlohmann::json d;
      d["distance"] = s.distance;
      d["rank"] = s.rank;
      d["nn_lower"] = s.nn_lower;
      d["nn_upper"] = s.nn_upper;
      d["violation"] = s.violation;
      j["details"].push_back(d);
    }
  }
  return j.dump();
}

std::string midpoint_report_to_json(const MidpointReport& r) {
  nlohmann::json j;
  j["rkA"] = r.a.ordinary_rank;
  j["rkB"] = r.b.ordinary_rank;
  j["rkMid"] = r.mid.ordinary_rank;
  j["rkplusA"] = nlohmann::json::parse(rank_result_to_json(r.a, false));
  j["rkplusB"] = nlohmann::json::parse(rank_result_to_json(r.b, false));
  j["rkplusMid"] = nlohmann::json::parse(rank_result_to_json(r.mid, false));
  return j.dump();
}

}  // namespace nnr

#include "nnr/jacobian.hpp"

#include "nnr/simplexgeo.hpp"

#include <json.hpp>

namespace nnr {

ParamPoint make_param_point(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows()) fail("ShapeMismatch", "x and y need the same number of blocks");
  ParamPoint p;
  p.k = x.rows();
  p.n = x.cols();
  p.m = y.cols();
  p.x = x;
  p.y = y;
  return p;
}

ParamPoint param_point_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto grid = [](const nlohmann::json& a) {
    std::vector<std::vector<Rational>> rows;
    bool exact = true;
    for (const auto& row : a) {
      std::vector<Rational> r;
      for (const auto& v : row) {
        if (v.is_number_integer())
          r.emplace_back(v.get<long long>());
        else if (v.is_string())
          r.emplace_back(parse_rational(v.get<std::string>()));
        else {
          r.emplace_back(rational_from_double(v.get<double>()));
          exact = false;
        }
      }
      rows.push_back(std::move(r));
    }
    return std::pair(rows, exact);
  };
  if (!j.contains("x") || !j.contains("y")) fail("FormatError", "parameter point needs x and y");
  auto [xr, xe] = grid(j["x"]);
  auto [yr, ye] = grid(j["y"]);
  Backend b = (xe && ye) ? Backend::Exact : Backend::Float;
  return make_param_point(Matrix::from_rows(xr, b), Matrix::from_rows(yr, b));
}

std::string param_point_to_json(const ParamPoint& p) {
  auto grid = [](const Matrix& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
      if (i) out += ", ";
      out += '[';
      for (int j = 0; j < m.cols(); ++j) {
        if (j) out += ", ";
        out += format_rational(m.q(i, j));
      }
      out += ']';
    }
    return out + "]";
  };
  return "{\"n\": " + std::to_string(p.n) + ", \"m\": " + std::to_string(p.m) +
         ", \"k\": " + std::to_string(p.k) + ", \"x\": " + grid(p.x) + ", \"y\": " + grid(p.y) + "}";
}

Matrix evaluate_f(const ParamPoint& p) { return p.x.transposed() * p.y; }

Matrix jacobian_matrix(const ParamPoint& p) {
  Backend b = (p.x.is_exact() && p.y.is_exact()) ? Backend::Exact : Backend::Float;
  Matrix jac(p.n * p.m, p.k * (p.n + p.m), b);
  for (int h = 0; h < p.k; ++h) {
    const int base = h * (p.n + p.m);
    // d f / d x_{h,i}: row i equals y_h
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.m; ++j) jac.set(i * p.m + j, base + i, p.y.q(h, j));
    // d f / d y_{h,j}: column j equals x_h
    for (int j = 0; j < p.m; ++j)
      for (int i = 0; i < p.n; ++i) jac.set(i * p.m + j, base + p.n + j, p.x.q(h, i));
  }
  return jac;
}

JacobianReport maximal_rank_check(const ParamPoint& p, double tau_rank) {
  if (p.k > std::min(p.n, p.m)) fail("BadK", "k must be at most min(n,m)");
  JacobianReport rep;
  rep.target_rank = p.k * (p.n + p.m - p.k);
  RankInfo info = rank_info(jacobian_matrix(p), tau_rank);
  rep.jac_rank = info.rank;
  rep.smallest_retained_pivot = info.smallest_retained_pivot;
  rep.maximal = (rep.jac_rank == rep.target_rank);
  rep.hypotheses_hold = (rank(p.x, tau_rank) == p.k) && (rank(p.y, tau_rank) == p.k);
  rep.positive_point = true;
  for (int h = 0; h < p.k && rep.positive_point; ++h) {
    for (int i = 0; i < p.n; ++i)
      if (p.x.q(h, i) <= 0) {
        rep.positive_point = false;
        break;
      }
    for (int j = 0; j < p.m && rep.positive_point; ++j)
      if (p.y.q(h, j) <= 0) {
        rep.positive_point = false;
        break;
      }
  }
  return rep;
}

CertificateReport isorank_certificate(const Matrix& P, const ParamPoint& p,
                                      std::optional<int> asserted_rkplus, double fit_tol) {
  Matrix f = evaluate_f(p);
  if (!f.same_shape(P)) fail("NotAFactorization", "f(p) has the wrong shape");
  double scale = std::max(1.0, frobenius_norm(P));
  if (frobenius_distance(f, P) > fit_tol * scale)
    fail("NotAFactorization", "f(p) does not reconstruct P");

  CertificateReport rep;
  rep.k = p.k;
  JacobianReport jr = maximal_rank_check(p);
  rep.jac_rank = jr.jac_rank;
  rep.target = jr.target_rank;
  rep.maximal = jr.maximal;
  rep.hypotheses = jr.hypotheses_hold;
  rep.positive = jr.positive_point;

  if (!rep.positive) rep.reasons.push_back("positivity");
  if (!rep.maximal) rep.reasons.push_back("maximal rank");

  if (asserted_rkplus) {
    rep.rkplus = *asserted_rkplus;
    if (p.k != rep.rkplus) rep.reasons.push_back("k differs from asserted nonnegative rank");
  } else {
    RankResult rr = nonneg_rank(P, [] {
      NnRankOptions o;
      o.want_witness = false;
      return o;
    }());
    if (rr.exact) {
      rep.rkplus = rr.nn_upper;
      if (p.k != rep.rkplus) rep.reasons.push_back("k differs from the nonnegative rank");
    } else {
      rep.reasons.push_back("nonnegative rank unverified");
    }
  }
  rep.granted = rep.reasons.empty();
  return rep;
}

std::string certificate_to_json(const CertificateReport& r) {
  nlohmann::json j;
  j["granted"] = r.granted;
  j["jac_rank"] = r.jac_rank;
  j["target"] = r.target;
  j["positive"] = r.positive;
  j["hypotheses"] = r.hypotheses;
  j["k"] = r.k;
  if (r.rkplus >= 0) j["rkplus"] = r.rkplus;
  j["reasons"] = r.reasons;
  return j.dump();
}

std::string jacobian_report_to_json(const JacobianReport& r) {
  nlohmann::json j;
  j["jac_rank"] = r.jac_rank;
  j["target_rank"] = r.target_rank;
  j["maximal"] = r.maximal;
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["positive_point"] = r.positive_point;
  if (r.smallest_retained_pivot > 0) j["smallest_retained_pivot"] = r.smallest_retained_pivot;
  return j.dump();
}

}  // namespace nnr

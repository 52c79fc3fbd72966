// Acceptance battery: every numeric claim the toolkit reproduces, one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include "nnr/jacobian.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/mixture.hpp"
#include "nnr/perturb.hpp"
#include "nnr/render.hpp"
#include "nnr/simplexgeo.hpp"
#include "support/oracle.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace nnr;

namespace {

std::string corpus(const std::string& name) { return std::string(NNR_CORPUS_DIR) + "/" + name; }

struct Criterion {
  int id;
  std::string text;
  std::function<bool(std::string&)> check;
};

bool exact_result(const RankResult& r, int rk, int rkplus) {
  return r.ordinary_rank == rk && r.nn_lower == rkplus && r.nn_upper == rkplus && r.exact;
}

// ---- 1: the 0/1 matrix with rank three and nonnegative rank four -----------

bool crit1(std::string& why) {
  Matrix b1 = load_matrix(corpus("b1.csv"));
  if (!b1.is_exact()) {
    why = "corpus matrix not on the exact backend";
    return false;
  }
  if (b1 != build_family({Family::CohenRothblum})) {
    why = "corpus b1.csv differs from the builder";
    return false;
  }
  RankResult r = nonneg_rank(b1);
  if (!exact_result(r, 3, 4)) {
    why = "expected rank 3, rk+ 4 exact";
    return false;
  }
  if (!r.witness || reconstruct(*r.witness) != b1) {
    why = "witness does not reconstruct bit-exactly";
    return false;
  }
  return true;
}

// ---- 2: the P family ---------------------------------------------------------

bool crit2(std::string& why) {
  for (const char* e : {"0", "0.1", "0.25"}) {
    Matrix p = build_family({Family::Peps, parse_rational(e)});
    if (rank(p) != 3) {
      why = std::string("rank(P_") + e + ") != 3";
      return false;
    }
  }
  Matrix p0 = build_family({Family::Peps, 0});
  RankResult r0 = nonneg_rank(p0);
  if (!exact_result(r0, 3, 3)) {
    why = "rk+(P_0) != 3 exact";
    return false;
  }
  if (!r0.witness || r0.witness->k != 3) {
    why = "P_0 witness missing or not 3 dyads";
    return false;
  }
  if (!(frobenius_distance(reconstruct(*r0.witness), p0) < 1e-10)) {
    why = "P_0 witness residual >= 1e-10";
    return false;
  }
  RankResult r1 = nonneg_rank(build_family({Family::Peps, Rational(1, 10)}));
  if (!exact_result(r1, 3, 4)) {
    why = "rk+(P_0.1) != 4 exact";
    return false;
  }
  return true;
}

// ---- 3: the M family and its critical parameter ------------------------------

bool crit3(std::string& why) {
  if (nonneg_rank(build_family({Family::Meps, 0})).nn_upper != 4 ||
      !nonneg_rank(build_family({Family::Meps, 0})).exact) {
    why = "rk+(M_0) != 4";
    return false;
  }
  if (nonneg_rank(build_family({Family::Meps, Rational(3, 10)})).nn_upper != 4) {
    why = "rk+(M_0.3) != 4";
    return false;
  }
  RankResult r75 = nonneg_rank(build_family({Family::Meps, Rational(3, 4)}));
  if (!exact_result(r75, 3, 3)) {
    why = "rk+(M_0.75) != 3 exact";
    return false;
  }
  auto t0 = std::chrono::steady_clock::now();
  double v = critical_epsilon(Family::Meps, 0, 1, 1e-6);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 60.0) {
    why = "bisection took " + std::to_string(secs) + "s";
    return false;
  }
  if (std::abs(v - 0.70710678118654752) > 1e-4) {
    why = "threshold " + std::to_string(v) + " off sqrt(2)/2 by more than 1e-4";
    return false;
  }
  return true;
}

// ---- 4: non-convexity both ways ----------------------------------------------

bool crit4(std::string& why) {
  MidpointReport b = midpoint_probe(load_matrix(corpus("b1.csv")), load_matrix(corpus("b2.csv")));
  if (!exact_result(b.a, 3, 4) || !exact_result(b.b, 3, 4)) {
    why = "rk+(B1) or rk+(B2) != 4";
    return false;
  }
  if (!exact_result(b.mid, 3, 3) || !b.mid.witness || b.mid.witness->k != 3) {
    why = "(B1+B2)/2 lacks an exact 3-dyad witness";
    return false;
  }
  MidpointReport a = midpoint_probe(load_matrix(corpus("a1.csv")), load_matrix(corpus("a2.csv")));
  if (!exact_result(a.a, 3, 3) || !exact_result(a.b, 3, 3)) {
    why = "frozen pair is not rank 3 with rk+ 3";
    return false;
  }
  if (!exact_result(a.mid, 3, 4)) {
    why = "frozen pair midpoint is not rk+ 4 at rank 3";
    return false;
  }
  return true;
}

// ---- 5: no rank drop in small balls -------------------------------------------

bool crit5(std::string& why) {
  Matrix mid = scale(load_matrix(corpus("b1.csv")) + load_matrix(corpus("b2.csv")), Rational(1, 2));
  const std::pair<std::string, Matrix> cases[] = {
      {"P_0", build_family({Family::Peps, 0})},
      {"B1", load_matrix(corpus("b1.csv"))},
      {"(B1+B2)/2", mid},
  };
  for (const auto& [name, m] : cases) {
    ProbeReport r = semicontinuity_probe(m, 1e-3, 500, 2024);
    if (r.violations != 0) {
      why = name + ": " + std::to_string(r.violations) + " violations";
      return false;
    }
  }
  return true;
}

// ---- 6: barycentric perturbations --------------------------------------------

bool crit6(std::string& why) {
  Matrix p0 = build_family({Family::Peps, 0});
  for (const char* d : {"0.01", "0.05", "0.1"}) {
    Matrix nd = barycentric(p0, parse_rational(d));
    RankResult r = nonneg_rank(nd);
    if (!(r.exact && r.nn_upper == 3)) {
      why = std::string("rk+(N_") + d + ") != 3";
      return false;
    }
    Matrix stack(2, 16, Backend::Exact);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        stack.set(0, i * 4 + j, p0.q(i, j));
        stack.set(1, i * 4 + j, nd.q(i, j));
      }
    if (rank(stack) != 2) {
      why = std::string("N_") + d + " proportional to P_0";
      return false;
    }
  }
  if (rank(barycentric(p0, 1)) != 1) {
    why = "rank(N_1) != 1";
    return false;
  }
  return true;
}

// ---- 7: Jacobian rank property suite ------------------------------------------

bool crit7(std::string& why) {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unif(0.05, 2.0);
  for (int n = 2; n <= 6; ++n)
    for (int m = 2; m <= 6; ++m)
      for (int k = 1; k <= 4 && k <= std::min(n, m); ++k) {
        const int target = k * (n + m - k);
        for (int trial = 0; trial < 100; ++trial) {
          Matrix x(k, n, Backend::Float), y(k, m, Backend::Float);
          for (int h = 0; h < k; ++h) {
            for (int i = 0; i < n; ++i) x.set(h, i, unif(rng));
            for (int j = 0; j < m; ++j) y.set(h, j, unif(rng));
          }
          ParamPoint p = make_param_point(x, y);
          JacobianReport rep = maximal_rank_check(p);
          if (rep.jac_rank > target) {
            why = "jacobian rank exceeded the variety dimension";
            return false;
          }
          if (!rep.hypotheses_hold) continue;  // measure-zero draw
          if (rep.jac_rank != target) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "(n=%d,m=%d,k=%d) trial %d: rank %d != %d", n, m, k,
                          trial, rep.jac_rank, target);
            why = buf;
            return false;
          }
        }

        // one float point per shape: central differences at 1e-5 within 1e-6
        Matrix x(k, n, Backend::Float), y(k, m, Backend::Float);
        for (int h = 0; h < k; ++h) {
          for (int i = 0; i < n; ++i) x.set(h, i, unif(rng));
          for (int j = 0; j < m; ++j) y.set(h, j, unif(rng));
        }
        ParamPoint p = make_param_point(x, y);
        Matrix jac = jacobian_matrix(p);
        const double delta = 1e-5;
        for (int c = 0; c < k * (n + m); ++c) {
          auto shifted = [&](double d) {
            ParamPoint q = p;
            int h = c / (n + m), off = c % (n + m);
            if (off < n)
              q.x.set(h, off, q.x.d(h, off) + d);
            else
              q.y.set(h, off - n, q.y.d(h, off - n) + d);
            return evaluate_f(q);
          };
          Matrix fp = shifted(delta), fm = shifted(-delta);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
              if (std::abs((fp.d(i, j) - fm.d(i, j)) / (2 * delta) - jac.d(i * m + j, c)) > 1e-6) {
                why = "finite differences disagree with the closed form";
                return false;
              }
        }

        // one exact point per shape: one-step differences are exact columns
        std::uniform_int_distribution<int> num(1, 64);
        Matrix xq(k, n, Backend::Exact), yq(k, m, Backend::Exact);
        for (int h = 0; h < k; ++h) {
          for (int i = 0; i < n; ++i) xq.set(h, i, Rational(num(rng), 32));
          for (int j = 0; j < m; ++j) yq.set(h, j, Rational(num(rng), 32));
        }
        ParamPoint pq = make_param_point(xq, yq);
        Matrix jq = jacobian_matrix(pq);
        Matrix f0 = evaluate_f(pq);
        for (int c = 0; c < k * (n + m); ++c) {
          ParamPoint q = pq;
          int h = c / (n + m), off = c % (n + m);
          if (off < n)
            q.x.set(h, off, q.x.q(h, off) + 1);
          else
            q.y.set(h, off - n, q.y.q(h, off - n) + 1);
          Matrix f1 = evaluate_f(q);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
              if (jq.q(i * m + j, c) != f1.q(i, j) - f0.q(i, j)) {
                why = "exact symbolic column mismatch";
                return false;
              }
        }
      }
  return true;
}

// ---- 8: nested polygon decision vs the direction-sweep oracle -----------------

bool crit8(std::string& why) {
  std::mt19937_64 rng(31337);
  int yes = 0, no = 0;
  for (int t = 0; t < 200; ++t) {
    int m = (t < 100) ? 4 : 6;
    Matrix mtx = oracle::random_rank3_stochastic(rng, 4, m);
    NestedInstance inst = section_polygon(mtx);
    bool main_says = min_nested_polygon(inst).k <= 3;
    std::vector<oracle::P2> o, z;
    for (const auto& q : inst.outer) o.push_back({to_double(q.x), to_double(q.y)});
    for (const auto& q : inst.inner) z.push_back({to_double(q.x), to_double(q.y)});
    bool oracle_says = oracle::triangle_exists(o, z);
    if (main_says != oracle_says) {
      why = "disagreement at instance " + std::to_string(t);
      return false;
    }
    (main_says ? yes : no)++;
  }
  if (yes == 0 || no == 0) {
    why = "degenerate sample: only one decision class drawn";
    return false;
  }
  return true;
}

// ---- 9: statistics layer -------------------------------------------------------

bool crit9(std::string& why) {
  std::mt19937_64 rng(271828);
  std::uniform_int_distribution<int> num(1, 9);
  auto dist = [&](int len) {
    std::vector<Rational> v(len);
    Rational tot = 0;
    for (auto& x : v) {
      x = num(rng);
      tot += x;
    }
    for (auto& x : v) x /= tot;
    return v;
  };
  auto mixture = [&](int k, int n, int m) {
    MixtureSpec s;
    s.alpha = dist(k);
    for (int h = 0; h < k; ++h) {
      s.cols.push_back(dist(n));
      s.rows.push_back(dist(m));
    }
    return s;
  };

  // residual = 0 exactly on rank <= 1 and only there, over 200 tables
  for (int t = 0; t < 200; ++t) {
    JointTable tab = mixture_build(mixture(t % 2 ? 1 : 3, 4, 4));
    bool zero = independence_residual(tab) == 0;
    bool rank1 = rank(tab.matrix) <= 1;
    if (zero != rank1) {
      why = "residual zero and rank <= 1 disagree at table " + std::to_string(t);
      return false;
    }
  }

  // construction always certifies membership at its level
  for (int t = 0; t < 100; ++t) {
    int k = 1 + t % 3;
    MembershipReport rep = model_membership(mixture_build(mixture(k, 4, 4)), k);
    if (rep.status != Membership::Member) {
      why = "a built mixture failed to certify at k=" + std::to_string(k);
      return false;
    }
  }

  JointTable b1 = make_joint_table(scale(load_matrix(corpus("b1.csv")), Rational(1, 8)));
  ProbeReport r = non_density_probe(b1, 3, 1e-3, 500, 2024);
  if (r.violations != 0) {
    why = std::to_string(r.violations) + " samples certified rank = rk+ = 3";
    return false;
  }
  return true;
}

// ---- 10: byte-identical reruns --------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool crit10(std::string& why) {
  auto runout = [&](const std::string& args, const std::string& tag) {
    std::string out = "/tmp/nnr_acc_" + tag + ".out";
    std::string cmd = std::string(NNR_CLI_PATH) + " " + args + " >" + out + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return std::string();
    return slurp(out);
  };
  const std::string cmds[] = {
      "nnrank " + corpus("b1.csv") + " --witness",
      "perturb ball " + corpus("p_eps_0.csv") + " --radius 1e-3 --samples 40 --seed 99 --details",
      "factorize " + corpus("m_eps_03.csv") + " -k 3 --seed 7",
      "critical Meps --lo 0 --hi 1 --tol 1e-4",
  };
  for (const auto& c : cmds) {
    std::string a = runout(c, "a"), b = runout(c, "b");
    if (a.empty() || a != b) {
      why = "stdout differs across reruns of: " + c;
      return false;
    }
  }
  for (const char* mode : {"tetra", "plane"}) {
    std::string f1 = "/tmp/nnr_acc_r1.svg", f2 = "/tmp/nnr_acc_r2.svg";
    std::string base = std::string("render ") + corpus("m_eps_075.csv") + " --mode " + mode;
    if (std::system((std::string(NNR_CLI_PATH) + " " + base + " -o " + f1 + " >/dev/null").c_str()) ||
        std::system((std::string(NNR_CLI_PATH) + " " + base + " -o " + f2 + " >/dev/null").c_str())) {
      why = "render failed";
      return false;
    }
    if (slurp(f1) != slurp(f2) || slurp(f1).empty()) {
      why = std::string("SVG differs across reruns (") + mode + ")";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "B1 has rank 3 and nonnegative rank 4, exact on the rational backend", crit1},
      {2, "P family: rank 3 throughout; rk+(P_0)=3 with witness; rk+(P_0.1)=4", crit2},
      {3, "M family: 4 / 4 / 3 and the critical parameter is sqrt(2)/2 within 1e-4", crit3},
      {4, "non-convexity: (B1+B2)/2 drops to 3; frozen pair midpoint rises to 4", crit4},
      {5, "500-sample balls at radius 1e-3 never drop the nonnegative rank", crit5},
      {6, "barycentric perturbations keep rk+ = 3 and are never proportional", crit6},
      {7, "Jacobian rank is k(n+m-k) under the independence hypotheses", crit7},
      {8, "nested polygon decision matches the boundary-sweep oracle, 200 cases", crit8},
      {9, "independence residual, mixture membership and the non-density probe", crit9},
      {10, "identical seeds give byte-identical JSON and SVG output", crit10},
  };
  int failed = 0;
  for (auto& c : criteria) {
    std::string why;
    bool ok = false;
    try {
      ok = c.check(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (ok) {
      std::printf("PASS  %2d  %s\n", c.id, c.text.c_str());
    } else {
      ++failed;
      std::printf("FAIL  %2d  %s  [%s]\n", c.id, c.text.c_str(), why.c_str());
    }
    std::fflush(stdout);
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed ? 1 : 0;
}

#include "nnr/cli.hpp"

#include "nnr/errors.hpp"
#include "nnr/jacobian.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/mixture.hpp"
#include "nnr/perturb.hpp"
#include "nnr/render.hpp"
#include "nnr/simplexgeo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace nnr::cli {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NNRANK_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      fail("BadParameter", "NNRANK_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& json, bool pretty) {
  if (pretty) {
    try {
      std::cout << nlohmann::json::parse(json).dump(2) << "\n";
      return;
    } catch (...) {
    }
  }
  std::cout << json << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("FileError", "cannot write '" + path + "'");
  out << text;
}

struct Args {
  bool pretty = false;
};

int run(int argc, const char* const* argv) {
  CLI::App app{"nonnegative rank toolkit"};
  app.require_subcommand(1);
  Args args;
  app.add_flag("--pretty", args.pretty, "indent JSON output");

  // rank FILE
  std::string rank_file;
  double tau_rank = kTauRank;
  auto* sc_rank = app.add_subcommand("rank", "ordinary rank of a matrix file");
  sc_rank->add_option("file", rank_file)->required();
  sc_rank->add_option("--tau", tau_rank, "relative pivot threshold (float backend)");

  // nnrank FILE
  std::string nn_file;
  double nn_tol = kTauFit;
  bool nn_witness = false;
  auto* sc_nn = app.add_subcommand("nnrank", "nonnegative rank bounds and certificate");
  sc_nn->add_option("file", nn_file)->required();
  sc_nn->add_option("--tol", nn_tol, "relative fit tolerance for the NMF upper bound");
  sc_nn->add_flag("--witness", nn_witness, "include the witness factorization");

  // factorize FILE -k K
  std::string fa_file;
  int fa_k = 1, fa_restarts = 32, fa_iters = 2000;
  std::uint64_t fa_seed = default_seed();
  auto* sc_fa = app.add_subcommand("factorize", "nonnegative matrix factorization");
  sc_fa->add_option("file", fa_file)->required();
  sc_fa->add_option("-k,--k", fa_k, "number of dyads")->required();
  sc_fa->add_option("--restarts", fa_restarts);
  sc_fa->add_option("--max-iters", fa_iters);
  sc_fa->add_option("--seed", fa_seed);

  // jacobian FILE_P FILE_POINT
  std::string ja_p, ja_point;
  int ja_rkplus = -1;
  auto* sc_ja = app.add_subcommand("jacobian", "isorank certificate for a factorization point");
  sc_ja->add_option("matrix", ja_p)->required();
  sc_ja->add_option("point", ja_point)->required();
  sc_ja->add_option("--rkplus", ja_rkplus, "assert the nonnegative rank instead of computing it");

  // perturb barycentric | ball
  auto* sc_pe = app.add_subcommand("perturb", "perturbation constructions and probes");
  sc_pe->require_subcommand(1);
  std::string pb_file, pb_out;
  std::string pd_delta = "0";
  auto* sc_pb = sc_pe->add_subcommand("barycentric", "move columns toward their barycenter");
  sc_pb->add_option("file", pb_file)->required();
  sc_pb->add_option("--delta", pd_delta)->required();
  sc_pb->add_option("-o,--out", pb_out, "write the matrix to a file as well");
  std::string pl_file;
  double pl_radius = 1e-3;
  int pl_samples = 100;
  std::uint64_t pl_seed = default_seed();
  bool pl_details = false;
  auto* sc_pl = sc_pe->add_subcommand("ball", "semicontinuity probe on ball samples");
  sc_pl->add_option("file", pl_file)->required();
  sc_pl->add_option("--radius", pl_radius)->required();
  sc_pl->add_option("--samples", pl_samples)->required();
  sc_pl->add_option("--seed", pl_seed);
  sc_pl->add_flag("--details", pl_details, "include per-sample records");

  // family NAME [--eps]
  std::string fm_name, fm_eps = "0", fm_out;
  auto* sc_fm = app.add_subcommand("family", "build a named example matrix");
  sc_fm->add_option("name", fm_name, "Peps | Meps | B1 | B2 | CohenRothblum")->required();
  sc_fm->add_option("--eps", fm_eps, "family parameter (exact decimal or p/q)");
  sc_fm->add_option("-o,--out", fm_out, "write the matrix to a file as well");

  // critical NAME --lo --hi --tol
  std::string cr_name, cr_lo = "0", cr_hi = "1";
  double cr_tol = 1e-6;
  auto* sc_cr = app.add_subcommand("critical", "bisect the rank-3 decision over a family");
  sc_cr->add_option("name", cr_name)->required();
  sc_cr->add_option("--lo", cr_lo)->required();
  sc_cr->add_option("--hi", cr_hi)->required();
  sc_cr->add_option("--tol", cr_tol)->required();

  // midpoint FILE_A FILE_B
  std::string mp_a, mp_b;
  auto* sc_mp = app.add_subcommand("midpoint", "ranks of two matrices and their midpoint");
  sc_mp->add_option("file_a", mp_a)->required();
  sc_mp->add_option("file_b", mp_b)->required();

  // mixture-check FILE -k K
  std::string mx_file;
  int mx_k = 1;
  bool mx_norm = false;
  auto* sc_mx = app.add_subcommand("mixture-check", "membership in the k-mixture model");
  sc_mx->add_option("file", mx_file)->required();
  sc_mx->add_option("-k,--k", mx_k)->required();
  sc_mx->add_flag("--normalize", mx_norm, "rescale the table to total mass one");

  // render FILE --mode M -o OUT.svg
  std::string rd_file, rd_mode = "tetra", rd_out;
  int rd_w = 640, rd_h = 480, rd_drop = -1;
  bool rd_nowit = false;
  auto* sc_rd = app.add_subcommand("render", "SVG view of a matrix");
  sc_rd->add_option("file", rd_file)->required();
  sc_rd->add_option("--mode", rd_mode, "tetra | plane");
  sc_rd->add_option("-o,--out", rd_out)->required();
  sc_rd->add_option("--width", rd_w);
  sc_rd->add_option("--height", rd_h);
  sc_rd->add_option("--drop", rd_drop, "coordinate dropped by the projection (default last)");
  sc_rd->add_flag("--no-witness", rd_nowit, "skip the nested triangle overlay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*sc_rank) {
    Matrix m = load_matrix(rank_file);
    nlohmann::json j;
    j["rank"] = rank(m, tau_rank);
    j["backend"] = m.is_exact() ? "exact" : "float";
    emit(j.dump(), args.pretty);
    return 0;
  }
  if (*sc_nn) {
    Matrix m = load_matrix(nn_file);
    NnRankOptions opts;
    opts.fit_tol = nn_tol;
    RankResult r = nonneg_rank(m, opts);
    emit(rank_result_to_json(r, nn_witness), args.pretty);
    return 0;
  }
  if (*sc_fa) {
    Matrix m = load_matrix(fa_file);
    NmfOptions opts;
    opts.restarts = fa_restarts;
    opts.max_iters = fa_iters;
    opts.seed = fa_seed;
    emit(factorization_to_json(nmf(m, fa_k, opts)), args.pretty);
    return 0;
  }
  if (*sc_ja) {
    Matrix m = load_matrix(ja_p);
    std::ifstream in(ja_point, std::ios::binary);
    if (!in) fail("FileError", "cannot open '" + ja_point + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ParamPoint p = param_point_from_json(text);
    std::optional<int> asserted;
    if (ja_rkplus >= 0) asserted = ja_rkplus;
    emit(certificate_to_json(isorank_certificate(m, p, asserted)), args.pretty);
    return 0;
  }
  if (*sc_pb) {
    Matrix m = load_matrix(pb_file);
    Matrix out = barycentric(m, parse_rational(pd_delta));
    if (!pb_out.empty()) save_matrix(pb_out, out);
    emit(write_matrix_json(out), args.pretty);
    return 0;
  }
  if (*sc_pl) {
    Matrix m = load_matrix(pl_file);
    ProbeReport r = semicontinuity_probe(m, pl_radius, pl_samples, pl_seed);
    emit(probe_report_to_json(r, pl_details), args.pretty);
    return 0;
  }
  if (*sc_fm) {
    FamilySpec spec{family_from_name(fm_name), parse_rational(fm_eps), Backend::Exact};
    Matrix m = build_family(spec);
    if (!fm_out.empty()) save_matrix(fm_out, m);
    emit(write_matrix_json(m), args.pretty);
    return 0;
  }
  if (*sc_cr) {
    double v = critical_epsilon(family_from_name(cr_name), parse_rational(cr_lo),
                                parse_rational(cr_hi), cr_tol);
    nlohmann::json j;
    j["name"] = cr_name;
    j["critical"] = v;
    j["tol"] = cr_tol;
    emit(j.dump(), args.pretty);
    return 0;
  }
  if (*sc_mp) {
    MidpointReport r = midpoint_probe(load_matrix(mp_a), load_matrix(mp_b));
    emit(midpoint_report_to_json(r), args.pretty);
    return 0;
  }
  if (*sc_mx) {
    bool norm = mx_norm;
    Matrix m;
    if (mx_file.size() > 5 && mx_file.compare(mx_file.size() - 5, 5, ".json") == 0) {
      std::ifstream in(mx_file, std::ios::binary);
      if (!in) fail("FileError", "cannot open '" + mx_file + "'");
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      JsonMatrix jm = parse_matrix_json(text);
      m = std::move(jm.matrix);
      norm = norm || jm.normalize;
    } else {
      m = load_matrix(mx_file);
    }
    JointTable t = make_joint_table(m, norm);
    emit(membership_to_json(model_membership(t, mx_k)), args.pretty);
    return 0;
  }
  if (*sc_rd) {
    RenderSpec spec;
    if (rd_mode == "tetra" || rd_mode == "tetrahedron")
      spec.mode = RenderMode::Tetrahedron3D;
    else if (rd_mode == "plane")
      spec.mode = RenderMode::Plane2D;
    else
      fail("BadMode", "mode must be tetra or plane");
    spec.width = rd_w;
    spec.height = rd_h;
    spec.drop_coordinate = rd_drop;
    spec.witness = !rd_nowit;
    std::string svg = render_svg(load_matrix(rd_file), spec);
    write_text(rd_out, svg);
    nlohmann::json j;
    j["out"] = rd_out;
    j["mode"] = rd_mode;
    emit(j.dump(), args.pretty);
    return 0;
  }
  return 2;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    nlohmann::json j;
    j["error"] = e.code();
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
}

}  // namespace nnr::cli

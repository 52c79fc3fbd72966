#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "nnr/jacobian.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/mixture.hpp"
#include "nnr/perturb.hpp"
#include "nnr/render.hpp"
#include "nnr/simplexgeo.hpp"

namespace py = pybind11;
using namespace nnr;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

py::object json_text_to_py(const std::string& text) {
  return json_to_py(nlohmann::json::parse(text));
}

Matrix matrix_from_py(const py::object& rows, const std::string& backend) {
  std::vector<std::vector<Rational>> data;
  bool saw_float = false;
  for (const auto& row : rows) {
    std::vector<Rational> r;
    for (const auto& cell : row.cast<py::sequence>()) {
      if (py::isinstance<py::str>(cell)) {
        r.push_back(parse_rational(cell.cast<std::string>()));
      } else if (py::isinstance<py::int_>(cell)) {
        r.emplace_back(cell.cast<long long>());
      } else {
        r.push_back(rational_from_double(cell.cast<double>()));
        saw_float = true;
      }
    }
    data.push_back(std::move(r));
  }
  Backend b;
  if (backend == "exact")
    b = Backend::Exact;
  else if (backend == "float")
    b = Backend::Float;
  else
    b = saw_float ? Backend::Float : Backend::Exact;
  Matrix m = Matrix::from_rows(data, Backend::Exact);
  return b == Backend::Exact ? m : m.to_backend(Backend::Float);
}

py::list matrix_to_py(const Matrix& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(m.d(i, j));
    rows.append(row);
  }
  return rows;
}

py::list matrix_to_strings(const Matrix& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(format_rational(m.q(i, j)));
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_nnrank, m) {
  m.doc() = "nonnegative rank toolkit (C++ core)";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, (e.code() + ": " + e.what()).c_str());
    }
  });

  py::class_<Matrix>(m, "Matrix")
      .def(py::init([](const py::object& rows, const std::string& backend) {
             return matrix_from_py(rows, backend);
           }),
           py::arg("rows"), py::arg("backend") = "auto")
      .def_property_readonly("rows", &Matrix::rows)
      .def_property_readonly("cols", &Matrix::cols)
      .def_property_readonly("backend",
                             [](const Matrix& m) { return m.is_exact() ? "exact" : "float"; })
      .def("to_lists", &matrix_to_py)
      .def("to_strings", &matrix_to_strings)
      .def("to_csv", &write_matrix_csv)
      .def("to_json", &write_matrix_json)
      .def("transposed", &Matrix::transposed)
      .def("__eq__", [](const Matrix& a, const Matrix& b) { return a == b; })
      .def("__repr__", [](const Matrix& m) {
        return "<Matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " " +
               (m.is_exact() ? "exact" : "float") + ">";
      });

  m.def("load_matrix", [](const std::string& path) { return load_matrix(path); });
  m.def("parse_matrix_json", [](const std::string& text) {
    return parse_matrix_json(text).matrix;
  });
  m.def("frobenius_distance", &frobenius_distance);
  m.def("frobenius_norm", &frobenius_norm);
  m.def("to_stochastic", &to_stochastic);
  m.def("rank", [](const Matrix& p, double tau) { return rank(p, tau); }, py::arg("p"),
        py::arg("tau") = kTauRank);
  m.def("sample_ball",
        [](const Matrix& center, double radius, int count, std::uint64_t seed) {
          return sample_ball({center, radius, count, seed});
        },
        py::arg("center"), py::arg("radius"), py::arg("count"), py::arg("seed") = 0);

  m.def("nonneg_rank",
        [](const Matrix& p, double fit_tol, bool witness) {
          NnRankOptions opts;
          opts.fit_tol = fit_tol;
          opts.want_witness = witness;
          return json_text_to_py(rank_result_to_json(nonneg_rank(p, opts), witness));
        },
        py::arg("p"), py::arg("fit_tol") = kTauFit, py::arg("witness") = false);

  m.def("nmf",
        [](const Matrix& p, int k, int restarts, int max_iters, std::uint64_t seed) {
          NmfOptions opts;
          opts.restarts = restarts;
          opts.max_iters = max_iters;
          opts.seed = seed;
          return json_text_to_py(factorization_to_json(nmf(p, k, opts)));
        },
        py::arg("p"), py::arg("k"), py::arg("restarts") = 32, py::arg("max_iters") = 2000,
        py::arg("seed") = 0);
  m.def("nnrank_upper",
        [](const Matrix& p, double fit_tol) { return nnrank_upper(p, fit_tol); }, py::arg("p"),
        py::arg("fit_tol") = kTauFit);

  m.def("evaluate_f", [](const Matrix& x, const Matrix& y) {
    return evaluate_f(make_param_point(x, y));
  });
  m.def("jacobian_matrix", [](const Matrix& x, const Matrix& y) {
    return jacobian_matrix(make_param_point(x, y));
  });
  m.def("maximal_rank_check", [](const Matrix& x, const Matrix& y) {
    return json_text_to_py(jacobian_report_to_json(maximal_rank_check(make_param_point(x, y))));
  });
  m.def("isorank_certificate",
        [](const Matrix& p, const Matrix& x, const Matrix& y, int asserted_rkplus) {
          std::optional<int> a;
          if (asserted_rkplus >= 0) a = asserted_rkplus;
          return json_text_to_py(
              certificate_to_json(isorank_certificate(p, make_param_point(x, y), a)));
        },
        py::arg("p"), py::arg("x"), py::arg("y"), py::arg("asserted_rkplus") = -1);

  m.def("build_family",
        [](const std::string& name, const std::string& eps, const std::string& backend) {
          FamilySpec spec{family_from_name(name), parse_rational(eps),
                          backend == "float" ? Backend::Float : Backend::Exact};
          return build_family(spec);
        },
        py::arg("name"), py::arg("eps") = "0", py::arg("backend") = "exact");
  m.def("barycentric", [](const Matrix& p, const std::string& delta) {
    return barycentric(p, parse_rational(delta));
  });
  m.def("semicontinuity_probe",
        [](const Matrix& p, double radius, int samples, std::uint64_t seed) {
          return json_text_to_py(
              probe_report_to_json(semicontinuity_probe(p, radius, samples, seed), false));
        },
        py::arg("p"), py::arg("radius"), py::arg("samples"), py::arg("seed") = 0);
  m.def("critical_epsilon",
        [](const std::string& name, const std::string& lo, const std::string& hi, double tol) {
          return critical_epsilon(family_from_name(name), parse_rational(lo), parse_rational(hi),
                                  tol);
        });
  m.def("midpoint_probe", [](const Matrix& a, const Matrix& b) {
    return json_text_to_py(midpoint_report_to_json(midpoint_probe(a, b)));
  });

  m.def("mixture_build",
        [](const py::object& alpha, const py::object& cols, const py::object& rows) {
          auto vec = [](const py::handle& seq) {
            std::vector<Rational> out;
            for (const auto& v : seq.cast<py::sequence>()) {
              if (py::isinstance<py::str>(v))
                out.push_back(parse_rational(v.cast<std::string>()));
              else if (py::isinstance<py::int_>(v))
                out.emplace_back(v.cast<long long>());
              else
                out.push_back(rational_from_double(v.cast<double>()));
            }
            return out;
          };
          MixtureSpec spec;
          spec.alpha = vec(alpha);
          for (const auto& c : cols.cast<py::sequence>()) spec.cols.push_back(vec(c));
          for (const auto& r : rows.cast<py::sequence>()) spec.rows.push_back(vec(r));
          return mixture_build(spec).matrix;
        });

  m.def("independence_residual", [](const Matrix& t, bool normalize) {
    return to_double(independence_residual(make_joint_table(t, normalize)));
  }, py::arg("t"), py::arg("normalize") = false);
  m.def("model_membership",
        [](const Matrix& t, int k, bool normalize) {
          return json_text_to_py(membership_to_json(model_membership(make_joint_table(t, normalize), k)));
        },
        py::arg("t"), py::arg("k"), py::arg("normalize") = false);
  m.def("non_density_probe",
        [](const Matrix& t, int k, double radius, int samples, std::uint64_t seed, bool normalize) {
          return json_text_to_py(probe_report_to_json(
              non_density_probe(make_joint_table(t, normalize), k, radius, samples, seed), false));
        },
        py::arg("t"), py::arg("k"), py::arg("radius"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("normalize") = false);

  m.def("render_svg",
        [](const Matrix& p, const std::string& mode, int width, int height, int drop) {
          RenderSpec spec;
          spec.mode = mode == "plane" ? RenderMode::Plane2D : RenderMode::Tetrahedron3D;
          spec.width = width;
          spec.height = height;
          spec.drop_coordinate = drop;
          return render_svg(p, spec);
        },
        py::arg("p"), py::arg("mode") = "tetra", py::arg("width") = 640, py::arg("height") = 480,
        py::arg("drop") = -1);
}

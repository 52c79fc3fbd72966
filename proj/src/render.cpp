#include "nnr/render.hpp"

#include "nnr/simplexgeo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace nnr {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct Canvas {
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  int width = 640, height = 480;

  void fit(double x, double y, bool first) {
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
    } else {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  }

  std::pair<double, double> map(double x, double y) const {
    double spanx = std::max(maxx - minx, 1e-12);
    double spany = std::max(maxy - miny, 1e-12);
    double s = std::min((width - 40.0) / spanx, (height - 40.0) / spany);
    double px = 20.0 + (x - minx) * s + ((width - 40.0) - spanx * s) / 2;
    double py = height - 20.0 - (y - miny) * s - ((height - 40.0) - spany * s) / 2;
    return {px, py};
  }
};

std::string svg_open(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\">\n";
}

std::string line(const Canvas& c, double x1, double y1, double x2, double y2,
                 const std::string& style) {
  auto [a, b] = c.map(x1, y1);
  auto [d, e] = c.map(x2, y2);
  return "  <line x1=\"" + num(a) + "\" y1=\"" + num(b) + "\" x2=\"" + num(d) + "\" y2=\"" +
         num(e) + "\" " + style + "/>\n";
}

std::string point_marker(const Canvas& c, double x, double y, const std::string& label) {
  auto [a, b] = c.map(x, y);
  std::string s = "  <circle cx=\"" + num(a) + "\" cy=\"" + num(b) +
                  "\" r=\"4\" fill=\"#c0392b\"/>\n";
  s += "  <text x=\"" + num(a + 6) + "\" y=\"" + num(b - 6) +
       "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" + label + "</text>\n";
  return s;
}

std::string render_tetrahedron(const Matrix& p, const RenderSpec& spec) {
  if (p.rows() != 4) fail("BadMode", "tetrahedron view needs a 4-row matrix");
  Matrix sto = to_stochastic(p);
  int drop = spec.drop_coordinate < 0 ? 3 : spec.drop_coordinate;
  if (drop < 0 || drop > 3) fail("BadMode", "drop coordinate out of range");

  // simplex vertices in R^3 after dropping one coordinate
  std::array<std::array<double, 3>, 4> verts{};
  int t = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == drop) {
      verts[i] = {0, 0, 0};
    } else {
      verts[i] = {0, 0, 0};
      verts[i][t++] = 1.0;
    }
  }
  // fixed orthographic camera
  const double ux[3] = {0.7071, -0.7071, 0.0};
  const double uy[3] = {-0.4082, -0.4082, 0.8165};
  auto proj = [&](const std::array<double, 3>& v) {
    return std::pair(v[0] * ux[0] + v[1] * ux[1] + v[2] * ux[2],
                     v[0] * uy[0] + v[1] * uy[1] + v[2] * uy[2]);
  };

  Canvas c;
  c.width = spec.width;
  c.height = spec.height;
  bool first = true;
  for (const auto& v : verts) {
    auto [x, y] = proj(v);
    c.fit(x, y, first);
    first = false;
  }
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < sto.cols(); ++j) {
    std::array<double, 3> v{};
    int tt = 0;
    for (int i = 0; i < 4; ++i)
      if (i != drop) v[tt++] = sto.d(i, j);
    auto q = proj(v);
    c.fit(q.first, q.second, false);
    pts.push_back(q);
  }

  std::string s = svg_open(spec.width, spec.height);
  const std::string edge = "stroke=\"#888\" stroke-width=\"1\"";
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto [x1, y1] = proj(verts[i]);
      auto [x2, y2] = proj(verts[j]);
      s += line(c, x1, y1, x2, y2, edge);
    }
  for (std::size_t j = 0; j < pts.size(); ++j)
    s += point_marker(c, pts[j].first, pts[j].second, "c" + std::to_string(j + 1));
  s += "</svg>\n";
  return s;
}

std::string render_plane(const Matrix& p, const RenderSpec& spec) {
  Matrix sto = to_stochastic(p).to_backend(Backend::Float);
  NestedInstance inst;
  try {
    inst = section_polygon(sto);
  } catch (const Error& e) {
    if (e.code() == "WrongRank") fail("BadMode", e.what());
    throw;
  }

  Canvas c;
  c.width = spec.width;
  c.height = spec.height;
  bool first = true;
  for (const auto& v : inst.outer) {
    c.fit(to_double(v.x), to_double(v.y), first);
    first = false;
  }

  std::string s = svg_open(spec.width, spec.height);
  std::string path = "  <polygon points=\"";
  for (std::size_t i = 0; i < inst.outer.size(); ++i) {
    auto [x, y] = c.map(to_double(inst.outer[i].x), to_double(inst.outer[i].y));
    if (i) path += ' ';
    path += num(x) + "," + num(y);
  }
  path += "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.5\"/>\n";
  s += path;

  if (spec.witness) {
    MinNested nested = min_nested_polygon(inst);
    if (nested.k == 3) {
      std::string tri = "  <polygon points=\"";
      for (std::size_t i = 0; i < nested.witness.size(); ++i) {
        auto [x, y] = c.map(to_double(nested.witness[i].x), to_double(nested.witness[i].y));
        if (i) tri += ' ';
        tri += num(x) + "," + num(y);
      }
      tri += "\" fill=\"none\" stroke=\"#2980b9\" stroke-width=\"1.2\" stroke-dasharray=\"5,3\"/>\n";
      s += tri;
    }
  }
  for (std::size_t j = 0; j < inst.inner.size(); ++j)
    s += point_marker(c, to_double(inst.inner[j].x), to_double(inst.inner[j].y),
                      "c" + std::to_string(j + 1));
  s += "</svg>\n";
  return s;
}

}  // namespace

std::string render_svg(const Matrix& p, const RenderSpec& spec) {
  switch (spec.mode) {
    case RenderMode::Tetrahedron3D:
      return render_tetrahedron(p, spec);
    case RenderMode::Plane2D:
      return render_plane(p, spec);
  }
  fail("BadMode", "unknown render mode");
}

}  // namespace nnr

#pragma once

#include "nnr/matrix.hpp"

#include <string>

namespace nnr {

enum class RenderMode { Tetrahedron3D, Plane2D };

struct RenderSpec {
  RenderMode mode = RenderMode::Tetrahedron3D;
  int width = 640;
  int height = 480;
  int drop_coordinate = -1;  // -1 = last
  bool witness = true;       // draw a nested triangle when one exists (Plane2D)
};

// Deterministic SVG text. Tetrahedron3D draws the columns of a stochastic
// 4 x m matrix inside the projected simplex; Plane2D draws the simplex
// section of a rank-3 matrix with its column points.
std::string render_svg(const Matrix& p, const RenderSpec& spec);

}  // namespace nnr

#pragma once

#include <string>

#include "ncvem/mesh.hpp"

namespace ncvem {

// Built-in mesh families on the unit square, used by the convergence studies
// and the test suites (no external mesh files needed).
//
//   quad           n x n axis-aligned squares
//   tri            crisscross: each square split into 4 triangles
//   distorted-quad quad with a deterministic pseudo-random perturbation of
//                  the interior vertices, up to 20% of h per coordinate
//   polygonal-dual centroid (barycentric) dual of the tri family
PolygonalMesh make_quad_mesh(int n);
PolygonalMesh make_tri_mesh(int n);
PolygonalMesh make_distorted_quad_mesh(int n, unsigned seed = 1u);
PolygonalMesh make_polygonal_dual_mesh(int n);

// Dispatch by family name; throws std::invalid_argument for unknown names.
PolygonalMesh make_builtin_mesh(const std::string& family, int n, unsigned seed = 1u);

} // namespace ncvem

#pragma once

#include <iosfwd>
#include <string>

#include "ncvem/mesh.hpp"

namespace ncvem {

// Text mesh format ".poly2":
//   line 1: "poly2 <num_vertices> <num_cells>"
//   num_vertices lines: "x y"
//   num_cells lines: "<n> i0 i1 ... i{n-1}"  (0-based, counterclockwise)
// '#' starts a comment; parsing is whitespace-delimited and locale-independent.
PolygonalMesh read_poly2(std::istream& in);
PolygonalMesh read_poly2_file(const std::string& path);

void write_poly2(std::ostream& out, const PolygonalMesh& mesh);
void write_poly2_file(const std::string& path, const PolygonalMesh& mesh);

} // namespace ncvem

#pragma once

#include <string>
#include <vector>

#include "ncvem/geometry.hpp"

namespace ncvem {

// Polygonal cell. vertex_loop is counterclockwise (enforced at build time).
struct Cell {
    std::vector<int> vertex_loop;
    std::vector<int> edges; // edges[i] joins vertex_loop[i] -> vertex_loop[i+1]
    Point2 centroid;        // area centroid x_T
    double area = 0.0;      // |T|
    double diameter = 0.0;  // h_T = max pairwise vertex distance
};

// Edge with one canonical orientation: v0 < v1 by global vertex index.
// normal is the right-hand normal of the direction v0 -> v1; the outward
// normal seen from a cell is normal times the cell's orientation sign.
struct Edge {
    int v0 = -1;
    int v1 = -1;
    Point2 midpoint; // x_e
    double length = 0.0;
    Point2 normal;
    int cell_left = -1;  // cell traversing v0 -> v1 (lies on the left)
    int cell_right = -1; // cell traversing v1 -> v0, or -1 on the boundary
    bool boundary = false;
};

struct PolygonalMesh {
    std::vector<Point2> vertices;
    std::vector<Cell> cells;
    std::vector<Edge> edges;
    std::vector<std::string> warnings; // e.g. auto-reversed clockwise loops

    double mesh_size() const; // h = max cell diameter

    // +1 if cell c traverses edge e in canonical direction, -1 otherwise.
    int orientation_sign(int c, int local_edge) const;
    // Outward unit normal of local edge `le` of cell `c`.
    Point2 outward_normal(int c, int local_edge) const;
};

// Per-cell shape-regularity report for the mesh assumptions: every edge of a
// cell is at least rho*h_T long (A1), and the cell is star-shaped with
// respect to a disc of radius rho*h_T (A2, checked via the polygon kernel).
struct MeshReport {
    struct CellEntry {
        double a1_margin = 0.0;   // min_e h_e / h_T
        double a2_ratio = 0.0;    // kernel inradius / h_T (0 if kernel empty)
        Point2 kernel_center;     // Chebyshev center of the kernel
    };
    std::vector<CellEntry> cells;
    double rho = 0.0;
    double h = 0.0;
    double min_a1_margin = 0.0;
    double min_a2_ratio = 0.0;
    bool pass_a1 = false;
    bool pass_a2 = false;
};

// Shoelace area, area centroid, max vertex-pair diameter of a simple polygon.
void polygon_geometry(const std::vector<Point2>& pts, double& area, Point2& centroid,
                      double& diameter);

// Kernel of a simple polygon (counterclockwise) by iterated half-plane
// clipping. Empty result means the polygon is not star-shaped.
std::vector<Point2> polygon_kernel(const std::vector<Point2>& pts, double tol = 1e-10);

// Chebyshev center (center and radius of the largest inscribed disc) of a
// convex polygon. Radius 0 for an empty input.
void chebyshev_center(const std::vector<Point2>& convex, Point2& center, double& radius);

// Build the full mesh data structure from raw vertices and cell vertex loops.
// Validates loops (simple, >= 3 distinct in-range vertices), reverses
// clockwise loops with a warning, and derives the canonical edge set.
PolygonalMesh build_topology(std::vector<Point2> vertices,
                             const std::vector<std::vector<int>>& cell_loops);

MeshReport validate_mesh(const PolygonalMesh& mesh, double rho);

} // namespace ncvem

#pragma once

#include <vector>

#include "ncvem/geometry.hpp"
#include "ncvem/mesh.hpp"

namespace ncvem {

// Quadrature on a 2D region: sum w_i f(p_i).
struct CellQuadrature {
    std::vector<Point2> points;
    std::vector<double> weights;
    int exactness = 0;

    template <class F> double integrate(F&& f) const {
        double acc = 0.0;
        for (size_t i = 0; i < points.size(); ++i) acc += weights[i] * f(points[i]);
        return acc;
    }
};

// Quadrature along an edge; points carry both the 2D location and the
// centered arclength coordinate s in [-h_e/2, h_e/2] measured in the
// canonical direction v0 -> v1.
struct EdgeQuadrature {
    std::vector<Point2> points;
    std::vector<double> arclength; // centered: s = t - h_e/2
    std::vector<double> weights;
    int exactness = 0;

    template <class F> double integrate(F&& f) const {
        double acc = 0.0;
        for (size_t i = 0; i < points.size(); ++i) acc += weights[i] * f(points[i]);
        return acc;
    }
};

// Gauss-Legendre nodes/weights on [-1, 1], exact through degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Rule on the triangle (a, b, c), exact for total degree <= degree, built by
// collapsing a tensor Gauss rule onto the triangle. All weights positive.
CellQuadrature triangle_quadrature(const Point2& a, const Point2& b, const Point2& c, int degree);

// Rule on a cell: fan triangulation around a kernel point (the centroid when
// the cell is star-shaped with respect to it, otherwise the Chebyshev center
// of the kernel). Throws std::runtime_error when the kernel is empty.
CellQuadrature cell_quadrature(const PolygonalMesh& mesh, int cell, int degree);
CellQuadrature cell_quadrature(const std::vector<Point2>& polygon, int degree);

// Gauss-Legendre rule mapped to an edge in canonical orientation.
EdgeQuadrature edge_quadrature(const PolygonalMesh& mesh, int edge, int degree);
EdgeQuadrature edge_quadrature(const Point2& p0, const Point2& p1, int degree);

} // namespace ncvem

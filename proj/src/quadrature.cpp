#include "ncvem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ncvem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    // Newton iteration from the Chebyshev initial guess; symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

CellQuadrature triangle_quadrature(const Point2& a, const Point2& b, const Point2& c,
                                   int degree) {
    // Duffy map of [0,1]^2 onto the reference triangle: (u, v) -> (u, v(1-u)),
    // Jacobian (1-u). A monomial of total degree d becomes degree d+1 in u and
    // d in v, so nu = ceil((d+2)/2), nv = ceil((d+1)/2) Gauss points suffice.
    int d = std::max(degree, 0);
    int nu = (d + 3) / 2;
    int nv = (d + 2) / 2;
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre(nu, xu, wu);
    gauss_legendre(nv, xv, wv);

    double jac = cross(b - a, c - a); // 2 |T|, sign by orientation
    CellQuadrature rule;
    rule.exactness = degree;
    rule.points.reserve(nu * nv);
    rule.weights.reserve(nu * nv);
    for (int i = 0; i < nu; ++i) {
        double u = 0.5 * (xu[i] + 1.0);
        for (int j = 0; j < nv; ++j) {
            double v = 0.5 * (xv[j] + 1.0);
            double xr = u;
            double yr = v * (1.0 - u);
            Point2 p = a + (b - a) * xr + (c - a) * yr;
            double w = 0.25 * wu[i] * wv[j] * (1.0 - u) * jac;
            rule.points.push_back(p);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

CellQuadrature cell_quadrature(const std::vector<Point2>& polygon, int degree) {
    int n = static_cast<int>(polygon.size());
    double area;
    Point2 centroid;
    double diam;
    polygon_geometry(polygon, area, centroid, diam);

    // Fan point: centroid when the fan triangles all keep positive
    // orientation, otherwise the Chebyshev center of the kernel.
    auto fan_ok = [&](const Point2& p) {
        for (int i = 0; i < n; ++i) {
            double a2 = cross(polygon[i] - p, polygon[(i + 1) % n] - p);
            if (a2 < -1e-14 * diam * diam) return false;
        }
        return true;
    };
    Point2 fan = centroid;
    if (!fan_ok(fan)) {
        auto ker = polygon_kernel(polygon);
        if (ker.empty()) throw std::runtime_error("cell has empty kernel; cannot triangulate");
        double radius;
        chebyshev_center(ker, fan, radius);
        if (!fan_ok(fan)) throw std::runtime_error("cell kernel degenerate; cannot triangulate");
    }

    CellQuadrature rule;
    rule.exactness = degree;
    for (int i = 0; i < n; ++i) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[(i + 1) % n];
        double a2 = cross(a - fan, b - fan);
        if (std::abs(a2) < 1e-15 * diam * diam) continue; // degenerate fan triangle
        CellQuadrature tri = triangle_quadrature(fan, a, b, degree);
        rule.points.insert(rule.points.end(), tri.points.begin(), tri.points.end());
        rule.weights.insert(rule.weights.end(), tri.weights.begin(), tri.weights.end());
    }
    return rule;
}

CellQuadrature cell_quadrature(const PolygonalMesh& mesh, int cell, int degree) {
    const Cell& c = mesh.cells[cell];
    std::vector<Point2> pts(c.vertex_loop.size());
    for (size_t i = 0; i < pts.size(); ++i) pts[i] = mesh.vertices[c.vertex_loop[i]];
    return cell_quadrature(pts, degree);
}

EdgeQuadrature edge_quadrature(const Point2& p0, const Point2& p1, int degree) {
    int n = std::max(1, (degree + 2) / 2); // ceil((degree+1)/2)
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double h = dist(p0, p1);
    Point2 mid = (p0 + p1) * 0.5;
    Point2 dir = (p1 - p0) / h;
    EdgeQuadrature rule;
    rule.exactness = 2 * n - 1;
    rule.points.resize(n);
    rule.arclength.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.5 * h * x[i]; // centered arclength
        rule.points[i] = mid + dir * s;
        rule.arclength[i] = s;
        rule.weights[i] = 0.5 * h * w[i];
    }
    return rule;
}

EdgeQuadrature edge_quadrature(const PolygonalMesh& mesh, int edge, int degree) {
    const Edge& e = mesh.edges[edge];
    return edge_quadrature(mesh.vertices[e.v0], mesh.vertices[e.v1], degree);
}

} // namespace ncvem

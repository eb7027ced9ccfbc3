#include "ncvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace ncvem {

double PolygonalMesh::mesh_size() const {
    double h = 0.0;
    for (const auto& c : cells) h = std::max(h, c.diameter);
    return h;
}

int PolygonalMesh::orientation_sign(int c, int local_edge) const {
    const Cell& cell = cells[c];
    int n = static_cast<int>(cell.vertex_loop.size());
    int a = cell.vertex_loop[local_edge];
    const Edge& e = edges[cell.edges[local_edge]];
    (void)n;
    return a == e.v0 ? 1 : -1;
}

Point2 PolygonalMesh::outward_normal(int c, int local_edge) const {
    const Edge& e = edges[cells[c].edges[local_edge]];
    return e.normal * static_cast<double>(orientation_sign(c, local_edge));
}

void polygon_geometry(const std::vector<Point2>& pts, double& area, Point2& centroid,
                      double& diameter) {
    int n = static_cast<int>(pts.size());
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point2& p = pts[i];
        const Point2& q = pts[(i + 1) % n];
        double w = cross(p, q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    area = 0.5 * a2;
    if (area != 0.0) centroid = {cx / (3.0 * a2), cy / (3.0 * a2)};
    diameter = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) diameter = std::max(diameter, dist(pts[i], pts[j]));
}

namespace {

// Proper or touching intersection of open segments (excluding shared loop
// endpoints, which the caller filters).
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    auto orient = [](const Point2& p, const Point2& q, const Point2& r) {
        return cross(q - p, r - p);
    };
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0)
        return true;
    return false;
}

bool polygon_is_simple(const std::vector<Point2>& pts) {
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // adjacent segments share an endpoint; skip
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

// Clip a convex polygon against the half-plane { p : dot(p - a, inward) >= -tol }.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Point2& a,
                                   const Point2& inward, double tol) {
    std::vector<Point2> out;
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        double dp = dot(p - a, inward);
        double dq = dot(q - a, inward);
        if (dp >= -tol) out.push_back(p);
        if ((dp > tol && dq < -tol) || (dp < -tol && dq > tol)) {
            double t = dp / (dp - dq);
            out.push_back(p + (q - p) * t);
        }
    }
    return out;
}

} // namespace

std::vector<Point2> polygon_kernel(const std::vector<Point2>& pts, double tol) {
    int n = static_cast<int>(pts.size());
    // Start from the polygon's bounding box so nonconvex polygons clip correctly.
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    std::vector<Point2> ker = {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    double scale = std::max(xmax - xmin, ymax - ymin);
    for (int i = 0; i < n && !ker.empty(); ++i) {
        const Point2& p = pts[i];
        const Point2& q = pts[(i + 1) % n];
        Point2 d = q - p;
        double len = norm(d);
        if (len == 0.0) continue;
        Point2 inward = {-d.y / len, d.x / len}; // left of a CCW edge is inside
        ker = clip_halfplane(ker, p, inward, tol * scale);
    }
    return ker;
}

void chebyshev_center(const std::vector<Point2>& convex, Point2& center, double& radius) {
    center = {0, 0};
    radius = 0.0;
    int m = static_cast<int>(convex.size());
    if (m == 0) return;
    if (m == 1) {
        center = convex[0];
        return;
    }
    // Half-plane form: dot(n_i, x) <= b_i with unit inward distance
    // b_i - dot(n_i, x). The LP max r s.t. dot(n_i,x) + r <= b_i is solved by
    // enumerating active-constraint triples and pairs (the polygon is tiny).
    std::vector<Point2> nrm(m);
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        Point2 d = convex[(i + 1) % m] - convex[i];
        double len = norm(d);
        if (len == 0.0) {
            nrm[i] = {0, 0};
            b[i] = 0;
        } else {
            nrm[i] = {d.y / len, -d.x / len}; // outward for CCW polygon
            b[i] = dot(nrm[i], convex[i]);
        }
    }
    auto feasible = [&](const Point2& x, double r) {
        for (int i = 0; i < m; ++i) {
            if (norm(nrm[i]) == 0.0) continue;
            if (dot(nrm[i], x) + r > b[i] + 1e-12 * (1.0 + std::abs(b[i]))) return false;
        }
        return true;
    };
    auto consider = [&](const Point2& x, double r) {
        if (r > radius && feasible(x, r)) {
            radius = r;
            center = x;
        }
    };
    // Triples of active constraints.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                // Solve [n; 1] [x; r] = b for the three constraints.
                double A[3][4] = {{nrm[i].x, nrm[i].y, 1.0, b[i]},
                                  {nrm[j].x, nrm[j].y, 1.0, b[j]},
                                  {nrm[k].x, nrm[k].y, 1.0, b[k]}};
                // Gaussian elimination with partial pivoting.
                bool ok = true;
                for (int col = 0; col < 3 && ok; ++col) {
                    int piv = col;
                    for (int r2 = col + 1; r2 < 3; ++r2)
                        if (std::abs(A[r2][col]) > std::abs(A[piv][col])) piv = r2;
                    if (std::abs(A[piv][col]) < 1e-14) {
                        ok = false;
                        break;
                    }
                    std::swap(A[piv], A[col]);
                    for (int r2 = 0; r2 < 3; ++r2) {
                        if (r2 == col) continue;
                        double f = A[r2][col] / A[col][col];
                        for (int c2 = col; c2 < 4; ++c2) A[r2][c2] -= f * A[col][c2];
                    }
                }
                if (!ok) continue;
                Point2 x = {A[0][3] / A[0][0], A[1][3] / A[1][1]};
                double r = A[2][3] / A[2][2];
                if (r >= 0.0) consider(x, r);
            }
    // Pairs with opposite normals (strip case): center line midway.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (norm(nrm[i] + nrm[j]) > 1e-12) continue;
            double width = b[i] + b[j];
            double r = width / 2.0;
            // Midpoint of the strip through a polygon vertex projected onto it.
            for (const auto& v : convex) {
                Point2 x = v + nrm[i] * (b[i] - dot(nrm[i], v) - r);
                consider(x, r);
            }
        }
}

PolygonalMesh build_topology(std::vector<Point2> vertices,
                             const std::vector<std::vector<int>>& cell_loops) {
    PolygonalMesh mesh;
    for (const auto& v : vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw std::invalid_argument("non-finite vertex coordinate");
    mesh.vertices = std::move(vertices);
    int nv = static_cast<int>(mesh.vertices.size());

    std::map<std::pair<int, int>, int> edge_index;
    mesh.cells.reserve(cell_loops.size());

    for (size_t ci = 0; ci < cell_loops.size(); ++ci) {
        Cell cell;
        cell.vertex_loop = cell_loops[ci];
        int n = static_cast<int>(cell.vertex_loop.size());
        if (n < 3) throw std::invalid_argument("cell with fewer than 3 vertices");
        std::set<int> uniq;
        for (int v : cell.vertex_loop) {
            if (v < 0 || v >= nv) throw std::invalid_argument("vertex index out of range");
            if (!uniq.insert(v).second)
                throw std::invalid_argument("duplicated vertex within a cell loop");
        }
        std::vector<Point2> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = mesh.vertices[cell.vertex_loop[i]];
        if (!polygon_is_simple(pts)) throw std::invalid_argument("non-simple cell polygon");

        double area;
        Point2 centroid;
        double diam;
        polygon_geometry(pts, area, centroid, diam);
        if (area == 0.0) throw std::invalid_argument("zero-area cell");
        if (area < 0.0) {
            std::reverse(cell.vertex_loop.begin(), cell.vertex_loop.end());
            std::reverse(pts.begin(), pts.end());
            polygon_geometry(pts, area, centroid, diam);
            mesh.warnings.push_back("cell " + std::to_string(ci) +
                                    ": clockwise loop reversed to counterclockwise");
        }
        cell.area = area;
        cell.centroid = centroid;
        cell.diameter = diam;

        cell.edges.resize(n);
        for (int i = 0; i < n; ++i) {
            int a = cell.vertex_loop[i];
            int b = cell.vertex_loop[(i + 1) % n];
            auto key = std::minmax(a, b);
            auto it = edge_index.find(key);
            int eid;
            if (it == edge_index.end()) {
                Edge e;
                e.v0 = key.first;
                e.v1 = key.second;
                const Point2& p0 = mesh.vertices[e.v0];
                const Point2& p1 = mesh.vertices[e.v1];
                e.midpoint = (p0 + p1) * 0.5;
                e.length = dist(p0, p1);
                if (e.length == 0.0) throw std::invalid_argument("zero-length edge");
                e.normal = right_normal((p1 - p0) / e.length);
                eid = static_cast<int>(mesh.edges.size());
                mesh.edges.push_back(e);
                edge_index.emplace(key, eid);
            } else {
                eid = it->second;
            }
            Edge& e = mesh.edges[eid];
            int side = (a == e.v0) ? 0 : 1; // 0: canonical traversal, left cell
            int& slot = (side == 0) ? e.cell_left : e.cell_right;
            if (slot != -1)
                throw std::invalid_argument("edge shared by two cells with equal orientation");
            slot = static_cast<int>(ci);
            cell.edges[i] = eid;
        }
        mesh.cells.push_back(std::move(cell));
    }

    for (auto& e : mesh.edges) {
        int adj = (e.cell_left >= 0) + (e.cell_right >= 0);
        if (adj == 0) throw std::logic_error("edge without adjacent cell");
        if (adj > 2) throw std::invalid_argument("edge shared by more than two cells");
        e.boundary = (adj == 1);
    }
    return mesh;
}

MeshReport validate_mesh(const PolygonalMesh& mesh, double rho) {
    MeshReport rep;
    rep.rho = rho;
    rep.h = mesh.mesh_size();
    rep.min_a1_margin = std::numeric_limits<double>::infinity();
    rep.min_a2_ratio = std::numeric_limits<double>::infinity();
    rep.cells.reserve(mesh.cells.size());
    for (const auto& cell : mesh.cells) {
        MeshReport::CellEntry entry;
        double min_edge = std::numeric_limits<double>::infinity();
        for (int eid : cell.edges) min_edge = std::min(min_edge, mesh.edges[eid].length);
        entry.a1_margin = min_edge / cell.diameter;

        std::vector<Point2> pts(cell.vertex_loop.size());
        for (size_t i = 0; i < pts.size(); ++i) pts[i] = mesh.vertices[cell.vertex_loop[i]];
        auto ker = polygon_kernel(pts);
        if (!ker.empty()) {
            double radius;
            chebyshev_center(ker, entry.kernel_center, radius);
            entry.a2_ratio = radius / cell.diameter;
        }
        rep.min_a1_margin = std::min(rep.min_a1_margin, entry.a1_margin);
        rep.min_a2_ratio = std::min(rep.min_a2_ratio, entry.a2_ratio);
        rep.cells.push_back(entry);
    }
    rep.pass_a1 = rep.min_a1_margin >= rho;
    rep.pass_a2 = rep.min_a2_ratio >= rho;
    return rep;
}

} // namespace ncvem

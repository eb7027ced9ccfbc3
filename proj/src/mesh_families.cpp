#include "ncvem/mesh_families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace ncvem {

namespace {

// Vertex grid of the n x n unit-square partition, row-major.
std::vector<Point2> grid_vertices(int n) {
    std::vector<Point2> v;
    v.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) v.push_back({double(i) / n, double(j) / n});
    return v;
}

inline int gid(int n, int i, int j) { return j * (n + 1) + i; }

} // namespace

PolygonalMesh make_quad_mesh(int n) {
    if (n < 1) throw std::invalid_argument("mesh resolution must be >= 1");
    auto vertices = grid_vertices(n);
    std::vector<std::vector<int>> loops;
    loops.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            loops.push_back({gid(n, i, j), gid(n, i + 1, j), gid(n, i + 1, j + 1), gid(n, i, j + 1)});
    return build_topology(std::move(vertices), loops);
}

PolygonalMesh make_tri_mesh(int n) {
    if (n < 1) throw std::invalid_argument("mesh resolution must be >= 1");
    auto vertices = grid_vertices(n);
    int ncorner = static_cast<int>(vertices.size());
    // One center vertex per square; four triangles around it.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) vertices.push_back({(i + 0.5) / n, (j + 0.5) / n});
    std::vector<std::vector<int>> loops;
    loops.reserve(4 * n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int c = ncorner + j * n + i;
            int v00 = gid(n, i, j), v10 = gid(n, i + 1, j);
            int v11 = gid(n, i + 1, j + 1), v01 = gid(n, i, j + 1);
            loops.push_back({v00, v10, c});
            loops.push_back({v10, v11, c});
            loops.push_back({v11, v01, c});
            loops.push_back({v01, v00, c});
        }
    return build_topology(std::move(vertices), loops);
}

PolygonalMesh make_distorted_quad_mesh(int n, unsigned seed) {
    if (n < 1) throw std::invalid_argument("mesh resolution must be >= 1");
    auto vertices = grid_vertices(n);
    double h = 1.0 / n;
    std::mt19937 rng(seed);
    // Map raw engine output to [-1, 1); std::uniform_real_distribution is
    // implementation-defined, this keeps meshes byte-identical everywhere.
    auto unit = [&rng]() { return 2.0 * (rng() * (1.0 / 4294967296.0)) - 1.0; };
    const double amplitude = 0.2 * h;
    for (int j = 1; j < n; ++j)
        for (int i = 1; i < n; ++i) {
            double dx = amplitude * unit();
            double dy = amplitude * unit();
            Point2& p = vertices[gid(n, i, j)];
            p.x += dx;
            p.y += dy;
        }
    std::vector<std::vector<int>> loops;
    loops.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            loops.push_back({gid(n, i, j), gid(n, i + 1, j), gid(n, i + 1, j + 1), gid(n, i, j + 1)});
    return build_topology(std::move(vertices), loops);
}

PolygonalMesh make_polygonal_dual_mesh(int n) {
    PolygonalMesh tri = make_tri_mesh(n);
    int nv = static_cast<int>(tri.vertices.size());
    int ne = static_cast<int>(tri.edges.size());
    int nt = static_cast<int>(tri.cells.size());

    // Dual vertices: edge midpoints, then triangle centroids, then the primal
    // boundary vertices (needed to close boundary cells).
    std::vector<Point2> dual_vertices;
    dual_vertices.reserve(ne + nt + 4 * n);
    for (const auto& e : tri.edges) dual_vertices.push_back(e.midpoint);
    for (const auto& c : tri.cells) dual_vertices.push_back(c.centroid);
    std::vector<int> boundary_vertex_id(nv, -1);
    std::vector<bool> on_boundary(nv, false);
    for (const auto& e : tri.edges)
        if (e.boundary) on_boundary[e.v0] = on_boundary[e.v1] = true;
    for (int v = 0; v < nv; ++v)
        if (on_boundary[v]) {
            boundary_vertex_id[v] = static_cast<int>(dual_vertices.size());
            dual_vertices.push_back(tri.vertices[v]);
        }

    // Incidence of primal vertices.
    std::vector<std::vector<int>> vert_edges(nv), vert_cells(nv);
    for (int e = 0; e < ne; ++e) {
        vert_edges[tri.edges[e].v0].push_back(e);
        vert_edges[tri.edges[e].v1].push_back(e);
    }
    for (int c = 0; c < nt; ++c)
        for (int v : tri.cells[c].vertex_loop) vert_cells[v].push_back(c);

    std::vector<std::vector<int>> loops;
    loops.reserve(nv);
    for (int v = 0; v < nv; ++v) {
        const Point2 pv = tri.vertices[v];
        struct FanPoint {
            double angle;
            int id;
        };
        std::vector<FanPoint> fan;
        for (int e : vert_edges[v]) {
            Point2 d = tri.edges[e].midpoint - pv;
            fan.push_back({std::atan2(d.y, d.x), e});
        }
        for (int c : vert_cells[v]) {
            Point2 d = tri.cells[c].centroid - pv;
            fan.push_back({std::atan2(d.y, d.x), ne + c});
        }
        std::sort(fan.begin(), fan.end(),
                  [](const FanPoint& a, const FanPoint& b) { return a.angle < b.angle; });

        std::vector<int> loop;
        if (!on_boundary[v]) {
            for (const auto& fp : fan) loop.push_back(fp.id);
        } else {
            // Start after the widest angular gap (the exterior) and close
            // through the primal vertex itself.
            int m = static_cast<int>(fan.size());
            int gap_at = 0;
            double gap_best = -1.0;
            for (int i = 0; i < m; ++i) {
                double next = fan[(i + 1) % m].angle + (i + 1 == m ? 2.0 * M_PI : 0.0);
                double gap = next - fan[i].angle;
                if (gap > gap_best) {
                    gap_best = gap;
                    gap_at = i;
                }
            }
            for (int i = 1; i <= m; ++i) loop.push_back(fan[(gap_at + i) % m].id);
            loop.push_back(boundary_vertex_id[v]);
        }
        loops.push_back(std::move(loop));
    }
    return build_topology(std::move(dual_vertices), loops);
}

PolygonalMesh make_builtin_mesh(const std::string& family, int n, unsigned seed) {
    if (family == "quad") return make_quad_mesh(n);
    if (family == "tri") return make_tri_mesh(n);
    if (family == "distorted-quad") return make_distorted_quad_mesh(n, seed);
    if (family == "polygonal-dual") return make_polygonal_dual_mesh(n);
    throw std::invalid_argument("unknown mesh family: " + family);
}

} // namespace ncvem

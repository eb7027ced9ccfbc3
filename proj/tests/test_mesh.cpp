#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ncvem/mesh.hpp"
#include "ncvem/mesh_families.hpp"
#include "ncvem/mesh_io.hpp"
#include "oracles.hpp"

using namespace ncvem;

TEST_CASE("single-cell unit square topology") {
    auto mesh = build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
    CHECK(mesh.cells.size() == 1);
    CHECK(mesh.edges.size() == 4);
    for (const auto& e : mesh.edges) CHECK(e.boundary);
    CHECK(mesh.cells[0].area == doctest::Approx(1.0));
    CHECK(mesh.cells[0].centroid.x == doctest::Approx(0.5));
    CHECK(mesh.cells[0].centroid.y == doctest::Approx(0.5));
    CHECK(mesh.cells[0].diameter == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("2x2 quad mesh edge counts") {
    auto mesh = make_quad_mesh(2);
    CHECK(mesh.cells.size() == 4);
    CHECK(mesh.edges.size() == 12);
    int interior = 0;
    for (const auto& e : mesh.edges) interior += e.boundary ? 0 : 1;
    CHECK(interior == 4);
}

TEST_CASE("L-shaped domain of 3 unit squares") {
    // squares at (0,0), (1,0), (0,1)
    std::vector<Point2> v = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}};
    std::vector<std::vector<int>> loops = {{0, 1, 4, 3}, {1, 2, 5, 4}, {3, 4, 7, 6}};
    auto mesh = build_topology(v, loops);
    CHECK(mesh.cells.size() == 3);
    CHECK(mesh.edges.size() == 10);
    int interior = 0;
    for (const auto& e : mesh.edges) interior += e.boundary ? 0 : 1;
    CHECK(interior == 2);
}

TEST_CASE("geometric quantities of standard shapes") {
    double area, diam;
    Point2 c;
    polygon_geometry({{0, 0}, {1, 0}, {0, 1}}, area, c, diam);
    CHECK(area == doctest::Approx(0.5));
    CHECK(c.x == doctest::Approx(1.0 / 3.0));
    CHECK(c.y == doctest::Approx(1.0 / 3.0));
    CHECK(diam == doctest::Approx(std::sqrt(2.0)));

    // regular hexagon, circumradius 1: area 3 sqrt(3) / 2
    std::vector<Point2> hex;
    for (int i = 0; i < 6; ++i)
        hex.push_back({std::cos(M_PI * i / 3.0), std::sin(M_PI * i / 3.0)});
    polygon_geometry(hex, area, c, diam);
    CHECK(area == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0));
    CHECK(area == doctest::Approx(oracles::polygon_monomial_moment(hex, 0, 0)));
}

TEST_CASE("build_topology rejects malformed input") {
    CHECK_THROWS(build_topology({{0, 0}, {1, 0}, {1, 1}}, {{0, 1, 1}}));      // duplicate
    CHECK_THROWS(build_topology({{0, 0}, {1, 0}, {1, 1}}, {{0, 1, 7}}));      // dangling
    CHECK_THROWS(build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                {{0, 2, 1, 3}})); // self-intersecting bowtie
}

TEST_CASE("clockwise loops are reversed with a warning") {
    auto mesh = build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 3, 2, 1}});
    CHECK(mesh.warnings.size() == 1);
    CHECK(mesh.cells[0].area == doctest::Approx(1.0));
    // loop is CCW after the fix
    double area, diam;
    Point2 c;
    std::vector<Point2> pts;
    for (int v : mesh.cells[0].vertex_loop) pts.push_back(mesh.vertices[v]);
    polygon_geometry(pts, area, c, diam);
    CHECK(area > 0.0);
}

TEST_CASE("validate_mesh: unit square, sliver, star-shaped pentagon") {
    auto square = build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
    MeshReport rep = validate_mesh(square, 0.1);
    CHECK(rep.pass_a1);
    CHECK(rep.pass_a2);
    CHECK(rep.cells[0].a1_margin == doctest::Approx(1.0 / std::sqrt(2.0)));
    // kernel of a convex polygon is the polygon; inradius of the square = 1/2
    CHECK(rep.cells[0].a2_ratio == doctest::Approx(0.5 / std::sqrt(2.0)));

    auto sliver =
        build_topology({{0, 0}, {1, 0}, {1, 1e-3}, {0, 1e-3}}, {{0, 1, 2, 3}});
    MeshReport srep = validate_mesh(sliver, 0.1);
    CHECK_FALSE(srep.pass_a1);

    // nonconvex but star-shaped pentagon
    std::vector<Point2> pent = {{0, 0}, {2, 0}, {2, 2}, {1, 0.8}, {0, 2}};
    auto pmesh = build_topology(pent, {{0, 1, 2, 3, 4}});
    MeshReport prep = validate_mesh(pmesh, 0.05);
    CHECK(prep.cells[0].a2_ratio > 0.0);

    // oracle: dense sampling of kernel membership and edge distance
    auto kernel_member = [&](const Point2& p) {
        int n = static_cast<int>(pent.size());
        for (int i = 0; i < n; ++i) {
            Point2 a = pent[i], b = pent[(i + 1) % n];
            if (cross(b - a, p - a) < -1e-12) return false;
        }
        return true;
    };
    auto edge_distance = [&](const Point2& p) {
        int n = static_cast<int>(pent.size());
        double best = 1e30;
        for (int i = 0; i < n; ++i) {
            Point2 a = pent[i], b = pent[(i + 1) % n];
            double len = dist(a, b);
            best = std::min(best, std::abs(cross(b - a, p - a)) / len);
        }
        return best;
    };
    double best = 0.0;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            Point2 p{2.0 * i / 200.0, 2.0 * j / 200.0};
            if (kernel_member(p)) best = std::max(best, edge_distance(p));
        }
    double h_T = pmesh.cells[0].diameter;
    CHECK(prep.cells[0].a2_ratio == doctest::Approx(best / h_T).epsilon(0.02));
}

TEST_CASE("mesh invariants: area sum, closed boundary, shared edges") {
    std::mt19937 rng(11);
    for (const char* family : {"quad", "tri", "distorted-quad", "polygonal-dual"}) {
        auto mesh = make_builtin_mesh(family, 4);
        double total = 0.0;
        for (const auto& c : mesh.cells) total += c.area;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        // per cell: sum of h_e * n_outward = 0
        for (size_t c = 0; c < mesh.cells.size(); ++c) {
            Point2 acc{0, 0};
            for (size_t le = 0; le < mesh.cells[c].edges.size(); ++le) {
                const Edge& e = mesh.edges[mesh.cells[c].edges[le]];
                acc += mesh.outward_normal(static_cast<int>(c), static_cast<int>(le)) * e.length;
            }
            CHECK(norm(acc) < 1e-12);
        }

        // interior edges are traversed once per direction
        for (const auto& e : mesh.edges) {
            if (e.boundary)
                CHECK((e.cell_left >= 0) != (e.cell_right >= 0));
            else {
                CHECK(e.cell_left >= 0);
                CHECK(e.cell_right >= 0);
                CHECK(e.cell_left != e.cell_right);
            }
        }
    }
    (void)rng;
}

TEST_CASE("canonical edge data independent of cell insertion order") {
    std::vector<Point2> v = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    std::vector<std::vector<int>> loops = {{0, 1, 4, 3}, {1, 2, 5, 4}};
    auto a = build_topology(v, loops);
    std::reverse(loops.begin(), loops.end());
    auto b = build_topology(v, loops);

    auto key = [](const Edge& e) { return std::make_pair(e.v0, e.v1); };
    for (const auto& ea : a.edges) {
        bool found = false;
        for (const auto& eb : b.edges) {
            if (key(ea) != key(eb)) continue;
            found = true;
            CHECK(ea.midpoint.x == eb.midpoint.x);
            CHECK(ea.midpoint.y == eb.midpoint.y);
            CHECK(ea.length == eb.length);
            CHECK(ea.normal.x == eb.normal.x);
            CHECK(ea.normal.y == eb.normal.y);
        }
        CHECK(found);
    }
}

TEST_CASE("poly2 round trip with comments and junk rejection") {
    auto mesh = make_polygonal_dual_mesh(2);
    std::ostringstream out;
    write_poly2(out, mesh);
    std::istringstream in("# a comment line\n" + out.str());
    auto back = read_poly2(in);
    CHECK(back.cells.size() == mesh.cells.size());
    CHECK(back.edges.size() == mesh.edges.size());
    double total = 0.0;
    for (const auto& c : back.cells) total += c.area;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    std::istringstream bad("poly3 1 1\n");
    CHECK_THROWS(read_poly2(bad));
    std::istringstream trunc("poly2 4 1\n0 0\n1 0\n1 1\n");
    CHECK_THROWS(read_poly2(trunc));
    std::istringstream badnum("poly2 1 0\n0 zz\n");
    CHECK_THROWS(read_poly2(badnum));
}

TEST_CASE("built-in families: counts and validity") {
    auto q2 = make_quad_mesh(2);
    CHECK(q2.cells.size() == 4);
    CHECK(q2.edges.size() == 12);

    auto t1 = make_tri_mesh(1);
    CHECK(t1.cells.size() == 4);

    auto d1 = make_polygonal_dual_mesh(2);
    CHECK(d1.cells.size() == (2 + 1) * (2 + 1) + 2 * 2); // one cell per primal vertex

    // deterministic distortion: identical seeds give identical meshes
    auto a = make_distorted_quad_mesh(5, 1);
    auto b = make_distorted_quad_mesh(5, 1);
    for (size_t i = 0; i < a.vertices.size(); ++i) {
        CHECK(a.vertices[i].x == b.vertices[i].x);
        CHECK(a.vertices[i].y == b.vertices[i].y);
    }
    auto c = make_distorted_quad_mesh(5, 2);
    bool same = true;
    for (size_t i = 0; i < a.vertices.size(); ++i)
        same = same && a.vertices[i].x == c.vertices[i].x && a.vertices[i].y == c.vertices[i].y;
    CHECK_FALSE(same);
}

TEST_CASE("distorted-quad family passes the mesh assumptions at rho = 0.1") {
    for (int n : {2, 4, 8, 16, 32, 64, 128}) {
        auto mesh = make_distorted_quad_mesh(n);
        MeshReport rep = validate_mesh(mesh, 0.1);
        INFO("n = ", n, " a1 = ", rep.min_a1_margin, " a2 = ", rep.min_a2_ratio);
        CHECK(rep.pass_a1);
        CHECK(rep.pass_a2);
    }
}

TEST_CASE("polygonal-dual family is shape-regular enough to assemble") {
    for (int n : {2, 4, 8}) {
        auto mesh = make_polygonal_dual_mesh(n);
        MeshReport rep = validate_mesh(mesh, 0.05);
        INFO("n = ", n, " a1 = ", rep.min_a1_margin, " a2 = ", rep.min_a2_ratio);
        CHECK(rep.min_a2_ratio > 0.0); // star-shaped cells
        double total = 0.0;
        for (const auto& c : mesh.cells) total += c.area;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

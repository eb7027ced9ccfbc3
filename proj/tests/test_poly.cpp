#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncvem/mesh_families.hpp"
#include "ncvem/monomials.hpp"
#include "ncvem/poly.hpp"
#include "ncvem/quadrature.hpp"
#include "oracles.hpp"

using namespace ncvem;

namespace {
PolygonalMesh unit_square_mesh() {
    return build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
}
} // namespace

TEST_CASE("poly ops: differentiate, divergence, multiply") {
    Poly2 x = Poly2::var_x(), y = Poly2::var_y();
    Poly2 x2y = x * x * y;
    CHECK(x2y.derivative_x().coeff({1, 1}) == doctest::Approx(2.0));
    CHECK(x2y.derivative_x().terms().size() == 1);

    CHECK(divergence(x, y).coeff({0, 0}) == doctest::Approx(2.0));
    CHECK(divergence(x, y).degree() == 0);

    Poly2 prod = (x + y) * (x - y);
    CHECK(prod.coeff({2, 0}) == doctest::Approx(1.0));
    CHECK(prod.coeff({0, 2}) == doctest::Approx(-1.0));
    CHECK(prod.coeff({1, 1}) == 0.0);
}

TEST_CASE("poly evaluation and zero-coefficient pruning") {
    Poly2 p = Poly2::var_x() * 3.0 + Poly2(2.0);
    CHECK(p.evaluate(2.0, 7.0) == doctest::Approx(8.0));
    Poly2 q = p - p;
    CHECK(q.is_zero());
    CHECK(q.degree() == -1);
}

TEST_CASE("cell basis: dimension, gradient, center values") {
    auto mesh = unit_square_mesh();
    CellMonomialBasis b1(mesh, 0, 1);
    CHECK(b1.size() == 3);
    CellMonomialBasis b2(mesh, 0, 2);
    CHECK(b2.size() == 6);

    // grad m_(1,0) = (1/h_T, 0), constant
    Point2 g = b1.gradient(1, {0.3, 0.9});
    CHECK(g.x == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.y == 0.0);

    // m_s(x_T) = 0 for |s| >= 1, 1 for s = 0
    Point2 c = mesh.cells[0].centroid;
    CHECK(b2.value(0, c) == doctest::Approx(1.0));
    for (int i = 1; i < b2.size(); ++i) CHECK(b2.value(i, c) == doctest::Approx(0.0));
}

TEST_CASE("edge basis moments") {
    auto mesh = unit_square_mesh();
    EdgeMonomialBasis mu(mesh, 0, 2);
    CHECK(mu.size() == 3);
    Eigen::VectorXd ints = mu.monomial_integrals();
    CHECK(ints[0] == doctest::Approx(mu.length()));
    CHECK(ints[1] == 0.0);
    // int_e mu_2 ds = h_e / 12 (analytic)
    CHECK(ints[2] == doctest::Approx(mu.length() / 12.0));
    // cross-check against quadrature
    EdgeQuadrature quad = edge_quadrature(mesh, 0, 4);
    double m2 = 0;
    for (size_t q = 0; q < quad.points.size(); ++q)
        m2 += quad.weights[q] * mu.value(2, quad.arclength[q]);
    CHECK(m2 == doctest::Approx(ints[2]));
}

TEST_CASE("edge basis identical from both adjacent cells") {
    auto mesh = make_quad_mesh(2);
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        EdgeMonomialBasis a(mesh, static_cast<int>(e), 3);
        // canonical data only depends on the edge, not on any cell
        CHECK(a.direction().x * (mesh.vertices[mesh.edges[e].v1].x -
                                 mesh.vertices[mesh.edges[e].v0].x) >= 0);
    }
}

TEST_CASE("cell quadrature: unit square and triangle basics") {
    auto mesh = unit_square_mesh();
    CellQuadrature q0 = cell_quadrature(mesh, 0, 0);
    CHECK(q0.integrate([](const Point2&) { return 1.0; }) == doctest::Approx(1.0));

    CellQuadrature q3 = cell_quadrature(mesh, 0, 3);
    CHECK(q3.integrate([](const Point2& p) { return p.x * p.x * p.y; }) ==
          doctest::Approx(1.0 / 6.0));

    CellQuadrature tri = triangle_quadrature({0, 0}, {1, 0}, {0, 1}, 1);
    double v = 0;
    for (size_t i = 0; i < tri.points.size(); ++i) v += tri.weights[i] * tri.points[i].x;
    CHECK(v == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("quadrature weights: positive, summing to the area / length") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        auto poly = oracles::random_polygon(rng);
        double area = oracles::polygon_monomial_moment(poly, 0, 0);
        for (int degree : {0, 2, 5, 8}) {
            CellQuadrature quad = cell_quadrature(poly, degree);
            double sum = 0;
            for (double w : quad.weights) {
                CHECK(w > 0.0);
                sum += w;
            }
            CHECK(sum == doctest::Approx(area).epsilon(1e-13));
        }
    }
    EdgeQuadrature eq = edge_quadrature({0.2, 0.4}, {1.4, -0.3}, 6);
    double sum = 0;
    for (double w : eq.weights) sum += w;
    CHECK(sum == doctest::Approx(dist({0.2, 0.4}, {1.4, -0.3})).epsilon(1e-13));
}

TEST_CASE("edge quadrature exactness") {
    // 2-point Gauss integrates t^3 on [0,1] exactly: 0.25
    EdgeQuadrature quad = edge_quadrature({0, 0}, {1, 0}, 3);
    CHECK(quad.points.size() == 2);
    CHECK(quad.integrate([](const Point2& p) { return p.x * p.x * p.x; }) ==
          doctest::Approx(0.25));

    // int over [(0,0),(2,0)] of x^2 = 8/3
    EdgeQuadrature q2 = edge_quadrature({0, 0}, {2, 0}, 2);
    CHECK(q2.integrate([](const Point2& p) { return p.x * p.x; }) == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("polygon quadrature matches divergence-theorem moments") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 40; ++rep) {
        auto poly = oracles::random_polygon(rng);
        for (int degree = 0; degree <= 8; ++degree) {
            Poly2 p = oracles::random_poly(rng, degree);
            CellQuadrature quad = cell_quadrature(poly, degree);
            double got = quad.integrate([&](const Point2& pt) { return p.evaluate(pt); });
            double want = oracles::polygon_integral(poly, p);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaled monomial derivatives match finite differences") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.2, 0.8);
    auto mesh = make_distorted_quad_mesh(3);
    const double step = 1e-6;
    for (int c = 0; c < 3; ++c) {
        CellMonomialBasis basis(mesh, c, 3);
        for (int rep = 0; rep < 5; ++rep) {
            Point2 p{uni(rng), uni(rng)};
            for (int i = 0; i < basis.size(); ++i) {
                Point2 g = basis.gradient(i, p);
                double fdx = (basis.value(i, {p.x + step, p.y}) -
                              basis.value(i, {p.x - step, p.y})) /
                             (2 * step);
                double fdy = (basis.value(i, {p.x, p.y + step}) -
                              basis.value(i, {p.x, p.y - step})) /
                             (2 * step);
                CHECK(std::abs(g.x - fdx) < 1e-6);
                CHECK(std::abs(g.y - fdy) < 1e-6);

                // 5-point stencil is exact for cubics; a larger step avoids
                // the h^-2 cancellation noise.
                const double hl = 1e-4;
                Eigen::VectorXd lap = basis.laplacian_coeffs(i);
                double lap_val = basis.eval_combination(lap, p);
                double fdlap = (basis.value(i, {p.x + hl, p.y}) +
                                basis.value(i, {p.x - hl, p.y}) +
                                basis.value(i, {p.x, p.y + hl}) +
                                basis.value(i, {p.x, p.y - hl}) - 4 * basis.value(i, p)) /
                               (hl * hl);
                CHECK(std::abs(lap_val - fdlap) < 1e-6);
            }
        }
    }
}

TEST_CASE("graded-lex ordering and index_of") {
    auto idx = multi_indices_upto(2);
    REQUIRE(idx.size() == 6);
    CHECK(idx[0] == MultiIndex{0, 0});
    CHECK(idx[1] == MultiIndex{1, 0});
    CHECK(idx[2] == MultiIndex{0, 1});
    CHECK(idx[3] == MultiIndex{2, 0});
    CHECK(idx[4] == MultiIndex{1, 1});
    CHECK(idx[5] == MultiIndex{0, 2});
    CellMonomialBasis basis({0, 0}, 1.0, 3);
    for (int i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.indices()[i]) == i);
}

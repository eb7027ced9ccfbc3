#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncvem/mesh_families.hpp"
#include "ncvem/projectors.hpp"
#include "ncvem/quadrature.hpp"
#include "oracles.hpp"

using namespace ncvem;

namespace {

PolygonalMesh unit_square_mesh() {
    return build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
}

} // namespace

TEST_CASE("gradient projection of scaled monomials is exact") {
    auto mesh = unit_square_mesh();
    ElementProjectors proj(mesh, 0, 1);
    // v = m_(1,0): coefficients of the gradient are (1/h_T, 0) on constants
    Eigen::VectorXd d = proj.D().col(1);
    Eigen::VectorXd g = proj.G() * d;
    CHECK(g[0] == doctest::Approx(1.0 / std::sqrt(2.0))); // x-component, constant
    CHECK(g[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gradient projection of a boundary-local DOF vector (hand check)") {
    auto mesh = unit_square_mesh();
    ElementProjectors proj(mesh, 0, 1);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(4);
    d[0] = 1.0; // bottom edge mean
    Eigen::VectorXd g = proj.G() * d;
    // PI_0 grad v = (1/|T|) int_dT v n ds = (0,-1) * h_e / |T|
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(-1.0));
}

TEST_CASE("polynomial reproduction of all projectors on all meshes") {
    for (const char* family : {"quad", "distorted-quad", "polygonal-dual"}) {
        auto mesh = make_builtin_mesh(family, 4);
        for (int k : {1, 2}) {
            int nk = poly_space_dim(k);
            int nkm1 = poly_space_dim(k - 1);
            for (size_t c = 0; c < mesh.cells.size(); ++c) {
                ElementProjectors proj(mesh, static_cast<int>(c), k);
                for (int alpha = 0; alpha < nk; ++alpha) {
                    Eigen::VectorXd d = proj.D().col(alpha);
                    // F and E reproduce the monomial
                    Eigen::VectorXd f = proj.F() * d;
                    Eigen::VectorXd e = proj.E() * d;
                    Eigen::VectorXd expect = Eigen::VectorXd::Zero(nk);
                    expect[alpha] = 1.0;
                    CHECK((f - expect).lpNorm<Eigen::Infinity>() < 1e-11);
                    CHECK((e - expect).lpNorm<Eigen::Infinity>() < 1e-11);
                    // G reproduces the gradient
                    Eigen::VectorXd g = proj.G() * d;
                    Eigen::VectorXd gx = proj.basis_k().deriv_x_coeffs(alpha).head(nkm1);
                    Eigen::VectorXd gy = proj.basis_k().deriv_y_coeffs(alpha).head(nkm1);
                    CHECK((g.head(nkm1) - gx).lpNorm<Eigen::Infinity>() < 1e-11);
                    CHECK((g.tail(nkm1) - gy).lpNorm<Eigen::Infinity>() < 1e-11);
                }
            }
        }
    }
}

TEST_CASE("elliptic projection: constants and kernel fixing") {
    auto mesh = unit_square_mesh();
    ElementProjectors proj(mesh, 0, 1);

    // v = 1: all edge means 1
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
    Eigen::VectorXd e = proj.E() * ones;
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(e[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(0.0).epsilon(1e-14));

    // v with a single bottom-edge mean: boundary average of the projection
    // equals the boundary average of v = 1/4 (hand computation), and the
    // eta coefficient is -sqrt(2)
    Eigen::VectorXd d = Eigen::VectorXd::Zero(4);
    d[0] = 1.0;
    Eigen::VectorXd p = proj.E() * d;
    CHECK(p[0] == doctest::Approx(0.25));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(p[2] == doctest::Approx(-std::sqrt(2.0)));
}

TEST_CASE("function projection for k = 1: mean surrogate on the unit square") {
    auto mesh = unit_square_mesh();
    ElementProjectors proj(mesh, 0, 1);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(4);
    d[0] = 1.0;
    Eigen::VectorXd f = proj.F() * d;
    // zeroth-moment surrogate: mean of the projection = 1/4 = the boundary
    // average functional of this DOF vector on the square
    CellQuadrature quad = cell_quadrature(mesh, 0, 4);
    double mean = quad.integrate([&](const Point2& pt) {
        return proj.basis_k().eval_combination(f, pt);
    }) / mesh.cells[0].area;
    CHECK(mean == doctest::Approx(0.25));
}

TEST_CASE("interior-moment orthogonality of the function projection (k = 2)") {
    auto mesh = make_distorted_quad_mesh(3);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (size_t c = 0; c < mesh.cells.size(); ++c) {
        ElementProjectors proj(mesh, static_cast<int>(c), 2);
        int n = proj.local_dofs();
        int n_edges = static_cast<int>(mesh.cells[c].edges.size());
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d[i] = uni(rng);
        // moment of PI_2 v against m_0 equals |T| * interior dof
        Eigen::VectorXd coef = proj.F() * d;
        Eigen::VectorXd moments = proj.mass_k() * coef;
        CHECK(moments[0] ==
              doctest::Approx(mesh.cells[c].area * d[n_edges * 2]).epsilon(1e-12));
    }
}

TEST_CASE("gradient projection solves its defining system (residual check)") {
    auto mesh = make_polygonal_dual_mesh(2);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (int k : {1, 2}) {
        for (size_t c = 0; c < mesh.cells.size(); ++c) {
            ElementProjectors proj(mesh, static_cast<int>(c), k);
            int nkm1 = poly_space_dim(k - 1);
            int n_edges = static_cast<int>(mesh.cells[c].edges.size());
            Eigen::VectorXd d(proj.local_dofs());
            for (int i = 0; i < d.size(); ++i) d[i] = uni(rng);
            Eigen::VectorXd g = proj.G() * d;

            // rebuild the right-hand side independently: for q = (m_a, 0) etc,
            // -int_T v div q + sum_e int_e v (q . n)
            const CellMonomialBasis& bq = proj.basis_km1();
            CellQuadrature quad = cell_quadrature(mesh, static_cast<int>(c), 2 * k);
            for (int comp = 0; comp < 2; ++comp) {
                for (int a = 0; a < nkm1; ++a) {
                    // lhs: int_T (PI grad v) . q
                    double lhs = quad.integrate([&](const Point2& pt) {
                        double qa = bq.value(a, pt);
                        double px = 0, py = 0;
                        for (int b = 0; b < nkm1; ++b) {
                            double v = bq.value(b, pt);
                            px += g[b] * v;
                            py += g[nkm1 + b] * v;
                        }
                        return comp == 0 ? px * qa : py * qa;
                    });
                    // rhs via DOF functionals
                    double rhs = 0.0;
                    Eigen::VectorXd div = comp == 0 ? proj.basis_km1().deriv_x_coeffs(a)
                                                    : proj.basis_km1().deriv_y_coeffs(a);
                    int nint = interior_dofs_per_cell(k);
                    for (int s = 0; s < nint; ++s)
                        rhs -= div[s] * mesh.cells[c].area * d[n_edges * k + s];
                    for (int le = 0; le < n_edges; ++le) {
                        const Edge& edge = mesh.edges[mesh.cells[c].edges[le]];
                        Point2 nrm = mesh.outward_normal(static_cast<int>(c), le);
                        double nc = comp == 0 ? nrm.x : nrm.y;
                        EdgeMonomialBasis mu(mesh, mesh.cells[c].edges[le], k - 1);
                        Eigen::VectorXd gamma = mu.expand(
                            [&](const Point2& pt) { return bq.value(a, pt); });
                        for (int j = 0; j < k; ++j)
                            rhs += nc * gamma[j] * edge.length * d[le * k + j];
                    }
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(
                                     std::max(1.0, std::abs(rhs))));
                }
            }
        }
    }
}

TEST_CASE("mass matrices are symmetric and positive definite") {
    auto mesh = make_distorted_quad_mesh(4);
    for (int k : {1, 2}) {
        for (int c = 0; c < 4; ++c) {
            ElementProjectors proj(mesh, c, k);
            const Eigen::MatrixXd& m = proj.mass_k();
            CHECK((m - m.transpose()).lpNorm<Eigen::Infinity>() <
                  1e-13 * m.lpNorm<Eigen::Infinity>());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
            CHECK(es.eigenvalues().minCoeff() > 0.0);
            CHECK(proj.max_condition() < 1e8);
        }
    }
}

TEST_CASE("cell data projection: means and exactness") {
    auto mesh = unit_square_mesh();
    // mean of x over the square
    Eigen::VectorXd p0 = project_data_cell(
        mesh, 0, 0, [](const Point2& p) { return p.x; }, 8);
    CHECK(p0[0] == doctest::Approx(0.5));

    // exact reproduction of a member of P^l
    std::mt19937 rng(77);
    Poly2 q = oracles::random_poly(rng, 2);
    Eigen::VectorXd c2 = project_data_cell(
        mesh, 0, 2, [&](const Point2& p) { return q.evaluate(p); }, 10);
    CellMonomialBasis basis(mesh, 0, 2);
    for (const Point2& probe : {Point2{0.3, 0.3}, Point2{0.8, 0.1}, Point2{0.5, 0.9}})
        CHECK(basis.eval_combination(c2, probe) == doctest::Approx(q.evaluate(probe)));

    // best linear fit of x^2 on the unit square is x - 1/6 (normal equations)
    Eigen::VectorXd c1 = project_data_cell(
        mesh, 0, 1, [](const Point2& p) { return p.x * p.x; }, 10);
    Poly2 fit = project_data_cell_poly(
        mesh, 0, 1, [](const Point2& p) { return p.x * p.x; }, 10);
    CHECK(fit.coeff({1, 0}) == doctest::Approx(1.0));
    CHECK(fit.coeff({0, 0}) == doctest::Approx(-1.0 / 6.0));
    (void)c1;

    // normal-equations oracle on the global monomial basis {1, x, y}
    // solve [int mi mj] a = [int mi x^2] with the divergence-theorem moments
    std::vector<Point2> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    Eigen::Matrix3d M;
    Eigen::Vector3d rhs;
    int ex[3] = {0, 1, 0}, ey[3] = {0, 0, 1};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            M(i, j) = oracles::polygon_monomial_moment(sq, ex[i] + ex[j], ey[i] + ey[j]);
        rhs[i] = oracles::polygon_monomial_moment(sq, ex[i] + 2, ey[i]);
    }
    Eigen::Vector3d a = M.ldlt().solve(rhs);
    CHECK(fit.coeff({0, 0}) == doctest::Approx(a[0]));
    CHECK(fit.coeff({1, 0}) == doctest::Approx(a[1]));
    CHECK(fit.coeff({0, 1}) == doctest::Approx(a[2]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("edge data projection") {
    auto mesh = unit_square_mesh();
    // constant g
    Eigen::VectorXd c = project_data_edge(
        mesh, 0, 1, [](const Point2&) { return 5.0; }, 8);
    CHECK(c[0] == doctest::Approx(5.0));
    CHECK(c[1] == doctest::Approx(0.0).epsilon(1e-14));

    // g = centered arclength t on the bottom edge (length 1): odd
    EdgeMonomialBasis mu(mesh, 0, 1);
    Eigen::VectorXd codd = project_data_edge(
        mesh, 0, 0, [&](const Point2& p) { return mu.arclength(p); }, 8);
    CHECK(codd[0] == doctest::Approx(0.0).epsilon(1e-14));

    // g = t^2, l = 1: constant 1/12
    Eigen::VectorXd ct2 = project_data_edge(
        mesh, 0, 1,
        [&](const Point2& p) { return mu.arclength(p) * mu.arclength(p); }, 8);
    CHECK(ct2[0] == doctest::Approx(1.0 / 12.0));
    CHECK(ct2[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("projector dimensions follow the dof layout") {
    auto mesh = make_polygonal_dual_mesh(2);
    for (int k : {1, 2}) {
        for (size_t c = 0; c < mesh.cells.size(); ++c) {
            ElementProjectors proj(mesh, static_cast<int>(c), k);
            int n_edges = static_cast<int>(mesh.cells[c].edges.size());
            int n = local_dof_count(n_edges, k);
            CHECK(proj.local_dofs() == n);
            CHECK(proj.D().rows() == n);
            CHECK(proj.D().cols() == poly_space_dim(k));
            CHECK(proj.G().rows() == 2 * poly_space_dim(k - 1));
            CHECK(proj.G().cols() == n);
            CHECK(proj.E().rows() == poly_space_dim(k));
            CHECK(proj.F().rows() == poly_space_dim(k));
        }
    }
}

#include "ncvem/projectors.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace ncvem {

namespace {

Eigen::MatrixXd monomial_mass_matrix(const CellMonomialBasis& basis, const CellQuadrature& quad) {
    int n = basis.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> vals(n);
    for (size_t q = 0; q < quad.points.size(); ++q) {
        for (int i = 0; i < n; ++i) vals[i] = basis.value(i, quad.points[q]);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m(i, j) += quad.weights[q] * vals[i] * vals[j];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
    return m;
}

double condition_estimate(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

} // namespace

ElementProjectors::ElementProjectors(const PolygonalMesh& mesh, int cell, int k)
    : cell_(cell), k_(k), basis_k_(mesh, cell, k),
      basis_km1_(mesh, cell, k - 1 >= 0 ? k - 1 : 0) {
    const Cell& T = mesh.cells[cell];
    int n_edges = static_cast<int>(T.edges.size());
    n_dofs_ = local_dof_count(n_edges, k);
    int nk = basis_k_.size();
    int nkm1 = poly_space_dim(k - 1);
    int nint = interior_dofs_per_cell(k);

    CellQuadrature quad = cell_quadrature(mesh, cell, 2 * k);
    mass_k_ = monomial_mass_matrix(basis_k_, quad);
    mass_km1_ = mass_k_.topLeftCorner(nkm1, nkm1);

    // Per-edge expansion of each cell monomial (and of normal components)
    // in the canonical edge basis, shared by D, G and E.
    std::vector<EdgeMonomialBasis> edge_bases;
    edge_bases.reserve(n_edges);
    for (int le = 0; le < n_edges; ++le)
        edge_bases.emplace_back(mesh, T.edges[le], k);

    // --- D: DOFs of the monomials --------------------------------------
    D_.resize(n_dofs_, nk);
    for (int le = 0; le < n_edges; ++le) {
        const Edge& e = mesh.edges[T.edges[le]];
        const EdgeMonomialBasis& mu = edge_bases[le];
        EdgeQuadrature equad = edge_quadrature(mesh, T.edges[le], 2 * k);
        for (int a = 0; a < nk; ++a) {
            for (int j = 0; j < k; ++j) {
                double acc = 0.0;
                for (size_t q = 0; q < equad.points.size(); ++q)
                    acc += equad.weights[q] * basis_k_.value(a, equad.points[q]) *
                           mu.value(j, equad.arclength[q]);
                D_(le * k_ + j, a) = acc / e.length;
            }
        }
    }
    if (nint > 0) {
        for (int a = 0; a < nk; ++a)
            for (int s = 0; s < nint; ++s)
                D_(n_edges * k_ + s, a) = mass_k_(s, a) / T.area;
    }

    // --- G: L^2 projection of the gradient ------------------------------
    // Row block for q = (m_a, 0) (and (0, m_a)):
    //   int_T grad(v) . q = -int_T v da/dx + sum_e (n_out . e_x) int_e v m_a
    // with the volume term hitting interior moments and the edge trace of
    // m_a expanded in the canonical edge basis.
    Eigen::MatrixXd BG = Eigen::MatrixXd::Zero(2 * nkm1, n_dofs_);
    for (int comp = 0; comp < 2; ++comp) {
        for (int a = 0; a < nkm1; ++a) {
            int row = comp * nkm1 + a;
            Eigen::VectorXd dm =
                comp == 0 ? basis_k_.deriv_x_coeffs(a) : basis_k_.deriv_y_coeffs(a);
            for (int s = 0; s < nint; ++s)
                if (dm[s] != 0.0) BG(row, n_edges * k_ + s) -= dm[s] * T.area;
            for (int le = 0; le < n_edges; ++le) {
                const Edge& e = mesh.edges[T.edges[le]];
                Point2 n_out = mesh.outward_normal(cell, le);
                double nc = comp == 0 ? n_out.x : n_out.y;
                if (nc == 0.0) continue;
                EdgeMonomialBasis mu(mesh, T.edges[le], k - 1);
                Eigen::VectorXd gamma =
                    mu.expand([&](const Point2& p) { return basis_km1_.value(a, p); });
                for (int j = 0; j < k; ++j)
                    BG(row, le * k_ + j) += nc * gamma[j] * e.length;
            }
        }
    }
    Eigen::MatrixXd mass_vec = Eigen::MatrixXd::Zero(2 * nkm1, 2 * nkm1);
    mass_vec.topLeftCorner(nkm1, nkm1) = mass_km1_;
    mass_vec.bottomRightCorner(nkm1, nkm1) = mass_km1_;
    Eigen::LDLT<Eigen::MatrixXd> mv(mass_vec);
    if (mv.info() != Eigen::Success)
        throw std::runtime_error("singular vector mass matrix (degenerate cell geometry)");
    G_ = mv.solve(BG);

    // --- E: elliptic projection -----------------------------------------
    // int_T grad(PI v) . grad(m_a) = -int_T v lap(m_a) + int_dT v dm_a/dn,
    // with the constant fixed by the boundary average (k = 1) or the cell
    // mean (k >= 2).
    Eigen::MatrixXd stiff = Eigen::MatrixXd::Zero(nk, nk);
    for (size_t q = 0; q < quad.points.size(); ++q) {
        std::vector<Point2> grads(nk);
        for (int i = 0; i < nk; ++i) grads[i] = basis_k_.gradient(i, quad.points[q]);
        for (int i = 0; i < nk; ++i)
            for (int j = i; j < nk; ++j)
                stiff(i, j) += quad.weights[q] * dot(grads[i], grads[j]);
    }
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < i; ++j) stiff(i, j) = stiff(j, i);

    Eigen::MatrixXd AE = stiff;
    Eigen::MatrixXd BE = Eigen::MatrixXd::Zero(nk, n_dofs_);
    for (int a = 1; a < nk; ++a) {
        Eigen::VectorXd lap = basis_k_.laplacian_coeffs(a);
        for (int s = 0; s < nint; ++s)
            if (lap[s] != 0.0) BE(a, n_edges * k_ + s) -= lap[s] * T.area;
        for (int le = 0; le < n_edges; ++le) {
            const Edge& e = mesh.edges[T.edges[le]];
            Point2 n_out = mesh.outward_normal(cell, le);
            EdgeMonomialBasis mu(mesh, T.edges[le], k - 1);
            Eigen::VectorXd gamma = mu.expand(
                [&](const Point2& p) { return dot(basis_k_.gradient(a, p), n_out); });
            for (int j = 0; j < k; ++j) BE(a, le * k_ + j) += gamma[j] * e.length;
        }
    }
    // Kernel-fixing row in place of the constant equation.
    AE.row(0).setZero();
    if (k_ == 1) {
        double perimeter = 0.0;
        for (int le = 0; le < n_edges; ++le) perimeter += mesh.edges[T.edges[le]].length;
        for (int le = 0; le < n_edges; ++le) {
            const Edge& e = mesh.edges[T.edges[le]];
            EdgeQuadrature equad = edge_quadrature(mesh, T.edges[le], k + 1);
            for (int b = 0; b < nk; ++b) {
                double acc = 0.0;
                for (size_t q = 0; q < equad.points.size(); ++q)
                    acc += equad.weights[q] * basis_k_.value(b, equad.points[q]);
                AE(0, b) += acc / perimeter;
            }
            BE(0, le * k_) += e.length / perimeter;
        }
    } else {
        for (int b = 0; b < nk; ++b) AE(0, b) = mass_k_(0, b) / T.area;
        BE(0, n_edges * k_) = 1.0; // zeroth interior moment is the mean
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> ae(AE);
    E_ = ae.solve(BE);
    max_condition_ = std::max(max_condition_, condition_estimate(AE));

    // --- F: function projection ------------------------------------------
    // Moments reachable from interior DOFs are used directly; the top two
    // moment grades come from the elliptic projection. For k = 1 everything
    // comes from the elliptic projection.
    if (k_ == 1) {
        F_ = E_;
    } else {
        int nkm2 = poly_space_dim(k - 2);
        Eigen::MatrixXd BF = mass_k_ * E_;
        for (int s = 0; s < nkm2; ++s) {
            BF.row(s).setZero();
            BF(s, n_edges * k_ + s) = T.area;
        }
        Eigen::LDLT<Eigen::MatrixXd> mk(mass_k_);
        if (mk.info() != Eigen::Success)
            throw std::runtime_error("singular mass matrix (degenerate cell geometry)");
        F_ = mk.solve(BF);
    }
    max_condition_ = std::max(max_condition_, condition_estimate(mass_k_));
    if (max_condition_ > 1e8)
        std::cerr << "ncvem: warning: cell " << cell_ << " local condition number "
                  << max_condition_ << "\n";
}

double ElementProjectors::projected_value(const Eigen::VectorXd& local_dofs,
                                          const Point2& p) const {
    return basis_k_.eval_combination(F_ * local_dofs, p);
}

Point2 ElementProjectors::projected_gradient(const Eigen::VectorXd& local_dofs,
                                             const Point2& p) const {
    Eigen::VectorXd g = G_ * local_dofs;
    int nkm1 = poly_space_dim(k_ - 1);
    Point2 out{0, 0};
    for (int a = 0; a < nkm1; ++a) {
        double v = basis_km1_.value(a, p);
        out.x += g[a] * v;
        out.y += g[nkm1 + a] * v;
    }
    return out;
}

Eigen::VectorXd project_data_cell(const PolygonalMesh& mesh, int cell, int l,
                                  const ScalarField& f, int quad_degree) {
    CellMonomialBasis basis(mesh, cell, l);
    CellQuadrature quad = cell_quadrature(mesh, cell, std::max(quad_degree, 2 * l));
    int n = basis.size();
    Eigen::MatrixXd mass = monomial_mass_matrix(basis, quad);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (size_t q = 0; q < quad.points.size(); ++q) {
        double fv = f(quad.points[q]);
        for (int i = 0; i < n; ++i) rhs[i] += quad.weights[q] * fv * basis.value(i, quad.points[q]);
    }
    return mass.ldlt().solve(rhs);
}

Poly2 monomial_to_poly(const CellMonomialBasis& basis, int i) {
    const MultiIndex& s = basis.indices()[i];
    Poly2 xi = (Poly2::var_x() - Poly2(basis.center().x)) * (1.0 / basis.scale());
    Poly2 eta = (Poly2::var_y() - Poly2(basis.center().y)) * (1.0 / basis.scale());
    return xi.pow(s.s1) * eta.pow(s.s2);
}

Poly2 project_data_cell_poly(const PolygonalMesh& mesh, int cell, int l, const ScalarField& f,
                             int quad_degree) {
    Eigen::VectorXd c = project_data_cell(mesh, cell, l, f, quad_degree);
    CellMonomialBasis basis(mesh, cell, l);
    Poly2 p;
    for (int i = 0; i < basis.size(); ++i)
        if (c[i] != 0.0) p = p + monomial_to_poly(basis, i) * c[i];
    return p;
}

Eigen::VectorXd project_data_edge(const PolygonalMesh& mesh, int edge, int l,
                                  const ScalarField& g, int quad_degree) {
    EdgeMonomialBasis basis(mesh, edge, l);
    return basis.expand(g, quad_degree);
}

} // namespace ncvem

#include "ncvem/forms.hpp"

#include <cmath>
#include <stdexcept>

#include "ncvem/monomials.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

int CoefficientField::max_k_degree() const {
    return std::max({K11.degree(), K12.degree(), K22.degree(), 0});
}

int CoefficientField::max_beta_degree() const {
    return std::max({beta1.degree(), beta2.degree(), 0});
}

int CoefficientField::form_quadrature_degree(int k) const {
    int extra = std::max({max_k_degree(), max_beta_degree() + 1, c.degree(), 0});
    return 2 * k + extra;
}

void CoefficientField::validate(const PolygonalMesh& mesh, int k) const {
    const double tol = 1e-9;
    Poly2 div_beta = divergence(beta1, beta2);
    int degree = form_quadrature_degree(k);
    for (size_t c_id = 0; c_id < mesh.cells.size(); ++c_id) {
        CellQuadrature quad = cell_quadrature(mesh, static_cast<int>(c_id), degree);
        for (const Point2& p : quad.points) {
            double k11 = K11.evaluate(p), k12 = K12.evaluate(p), k22 = K22.evaluate(p);
            double mid = 0.5 * (k11 + k22);
            double rad = std::sqrt(0.25 * (k11 - k22) * (k11 - k22) + k12 * k12);
            double lmin = mid - rad, lmax = mid + rad;
            if (lmin < eta - tol)
                throw std::invalid_argument(
                    "coefficient validation: K eigenvalue " + std::to_string(lmin) +
                    " below declared eta at (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                    ")");
            if (lmax > xi + tol)
                throw std::invalid_argument("coefficient validation: K eigenvalue " +
                                            std::to_string(lmax) + " above declared xi");
            double bound = c.evaluate(p) - 0.5 * div_beta.evaluate(p);
            if (bound < c0 - tol)
                throw std::invalid_argument(
                    "coefficient validation: c - div(beta)/2 = " + std::to_string(bound) +
                    " below declared c0 = " + std::to_string(c0));
        }
    }
}

DominanceReport diffusion_dominance_guard(const PolygonalMesh& mesh, const CoefficientField& cf) {
    DominanceReport rep;
    rep.h = mesh.mesh_size();
    Poly2 div_beta = divergence(cf.beta1, cf.beta2);
    for (size_t c_id = 0; c_id < mesh.cells.size(); ++c_id) {
        CellQuadrature quad = cell_quadrature(mesh, static_cast<int>(c_id), 4);
        for (const Point2& p : quad.points)
            rep.div_beta_inf = std::max(rep.div_beta_inf, std::abs(div_beta.evaluate(p)));
    }
    rep.product = rep.h * rep.div_beta_inf;
    if (rep.product > cf.eta || (cf.c0 > 0.0 && rep.product > cf.c0)) {
        rep.warn = true;
        rep.message = "diffusion-dominance guard: h*|div beta|_inf = " +
                      std::to_string(rep.product) + " reaches eta = " + std::to_string(cf.eta) +
                      " or c0 = " + std::to_string(cf.c0) +
                      "; the coercivity analysis may not apply";
    }
    return rep;
}

namespace {

// int_T w m_i^{(bi)} m_j^{(bj)} for a polynomial weight w, by quadrature.
Eigen::MatrixXd weighted_mass(const CellQuadrature& quad, const Poly2& w,
                              const CellMonomialBasis& bi, const CellMonomialBasis& bj, int ni,
                              int nj) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ni, nj);
    if (w.is_zero()) return m;
    std::vector<double> vi(ni), vj(nj);
    for (size_t q = 0; q < quad.points.size(); ++q) {
        double wq = quad.weights[q] * w.evaluate(quad.points[q]);
        if (wq == 0.0) continue;
        for (int i = 0; i < ni; ++i) vi[i] = bi.value(i, quad.points[q]);
        for (int j = 0; j < nj; ++j) vj[j] = bj.value(j, quad.points[q]);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < nj; ++j) m(i, j) += wq * vi[i] * vj[j];
    }
    return m;
}

} // namespace

Eigen::MatrixXd stabilization(const PolygonalMesh& mesh, int cell, char kind,
                              const ElementProjectors& proj, const CoefficientField& cf) {
    const Cell& T = mesh.cells[cell];
    int n = proj.local_dofs();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n) - proj.D() * proj.F();
    CellQuadrature quad =
        cell_quadrature(mesh, cell, std::max({cf.max_k_degree(), cf.c.degree(), 0}));
    double sigma;
    if (kind == 'a') {
        double tr = quad.integrate(
            [&](const Point2& p) { return cf.K11.evaluate(p) + cf.K22.evaluate(p); });
        sigma = 0.5 * tr / T.area; // mean of trace(K) / 2
    } else if (kind == 'c') {
        sigma = quad.integrate([&](const Point2& p) { return cf.c.evaluate(p); });
    } else {
        throw std::invalid_argument("stabilization kind must be 'a' or 'c'");
    }
    return sigma * (Q.transpose() * Q);
}

LocalForms build_local_forms(const PolygonalMesh& mesh, int cell, const ElementProjectors& proj,
                             const CoefficientField& cf, const ScalarField& f,
                             int data_quad_degree) {
    const Cell& T = mesh.cells[cell];
    int k = proj.order();
    int nk = proj.basis_k().size();
    int nkm1 = poly_space_dim(k - 1);
    int n_edges = static_cast<int>(T.edges.size());
    int n = proj.local_dofs();

    CellQuadrature quad = cell_quadrature(mesh, cell, cf.form_quadrature_degree(k));
    const CellMonomialBasis& bk = proj.basis_k();
    const CellMonomialBasis& bkm1 = proj.basis_km1();

    LocalForms lf;

    // Diffusion: G^T M_K G with the K-weighted vector mass matrix.
    Eigen::MatrixXd MK(2 * nkm1, 2 * nkm1);
    MK.topLeftCorner(nkm1, nkm1) = weighted_mass(quad, cf.K11, bkm1, bkm1, nkm1, nkm1);
    MK.bottomRightCorner(nkm1, nkm1) = weighted_mass(quad, cf.K22, bkm1, bkm1, nkm1, nkm1);
    MK.topRightCorner(nkm1, nkm1) = weighted_mass(quad, cf.K12, bkm1, bkm1, nkm1, nkm1);
    MK.bottomLeftCorner(nkm1, nkm1) = MK.topRightCorner(nkm1, nkm1).transpose();
    lf.A_diff = proj.G().transpose() * MK * proj.G();

    // Convection, fully skew-symmetrized:
    //   1/2 [ int b.(PI' u)(PI v) - int b.(PI' v)(PI u) - int div(b)(PI u)(PI v) ]
    Eigen::MatrixXd Cb(2 * nkm1, nk);
    Cb.topRows(nkm1) = weighted_mass(quad, cf.beta1, bkm1, bk, nkm1, nk);
    Cb.bottomRows(nkm1) = weighted_mass(quad, cf.beta2, bkm1, bk, nkm1, nk);
    Poly2 div_beta = divergence(cf.beta1, cf.beta2);
    Eigen::MatrixXd Mdiv = weighted_mass(quad, div_beta, bk, bk, nk, nk);
    Eigen::MatrixXd term1 = proj.F().transpose() * Cb.transpose() * proj.G();
    lf.A_conv = 0.5 * (term1 - term1.transpose() -
                       proj.F().transpose() * Mdiv * proj.F());

    // Reaction: F^T M_c F.
    Eigen::MatrixXd Mc = weighted_mass(quad, cf.c, bk, bk, nk, nk);
    lf.A_reac = proj.F().transpose() * Mc * proj.F();

    lf.S_a = stabilization(mesh, cell, 'a', proj, cf);
    lf.S_c = stabilization(mesh, cell, 'c', proj, cf);

    lf.load = Eigen::VectorXd::Zero(n);
    if (f) {
        if (k == 1) {
            // <f_h, v~>: the mean of f spread evenly over the edge averages.
            Eigen::VectorXd p0 = project_data_cell(mesh, cell, 0, f, data_quad_degree);
            double w = T.area * p0[0] / n_edges;
            for (int le = 0; le < n_edges; ++le) lf.load[le * k] = w;
        } else {
            Eigen::VectorXd pf = project_data_cell(mesh, cell, k - 2, f, data_quad_degree);
            int nint = interior_dofs_per_cell(k);
            for (int s = 0; s < nint; ++s) lf.load[n_edges * k + s] = T.area * pf[s];
        }
    }
    return lf;
}

Eigen::VectorXd dirichlet_moments(const PolygonalMesh& mesh, int edge, const ScalarField& g,
                                  int k, int quad_degree) {
    const Edge& e = mesh.edges[edge];
    EdgeMonomialBasis mu(mesh, edge, k - 1);
    EdgeQuadrature quad = edge_quadrature(mesh, edge, quad_degree);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(k);
    for (size_t q = 0; q < quad.points.size(); ++q) {
        double gv = g(quad.points[q]);
        for (int j = 0; j < k; ++j)
            m[j] += quad.weights[q] * gv * mu.value(j, quad.arclength[q]);
    }
    return m / e.length;
}

} // namespace ncvem

#pragma once

#include <Eigen/Dense>
#include <string>

#include "ncvem/dofspace.hpp"
#include "ncvem/mesh.hpp"
#include "ncvem/poly.hpp"
#include "ncvem/projectors.hpp"

namespace ncvem {

// Polynomial coefficient fields of the operator
//   -div(K grad u) + beta . grad u + c u = f.
// K is symmetric 2x2 (K12 single-sourced); eta <= xi are the declared
// ellipticity bounds, c0 the declared lower bound of c - div(beta)/2.
struct CoefficientField {
    Poly2 K11{1.0}, K12{0.0}, K22{1.0};
    Poly2 beta1{0.0}, beta2{0.0};
    Poly2 c{0.0};
    double c0 = 0.0;
    double eta = 1.0;
    double xi = 1.0;

    int max_k_degree() const;
    int max_beta_degree() const;

    // Quadrature exactness making every assembled integral exact:
    // 2k + max(deg K, deg beta + 1, deg c).
    int form_quadrature_degree(int k) const;

    // Dense sampling check of the ellipticity bounds and the reaction bound
    // c - div(beta)/2 >= c0, at the assembly quadrature points of every cell.
    // Throws std::invalid_argument on violation (tolerance 1e-9).
    void validate(const PolygonalMesh& mesh, int k) const;
};

// Mesh-dependent diffusion-dominance estimate: the coercivity floor shrinks
// with h * |div beta|_inf; a warning fires when that product reaches the
// declared eta or c0.
struct DominanceReport {
    double h = 0.0;
    double div_beta_inf = 0.0;
    double product = 0.0;
    bool warn = false;
    std::string message;
};
DominanceReport diffusion_dominance_guard(const PolygonalMesh& mesh, const CoefficientField& cf);

// Local matrices of one cell, N_T x N_T, acting on local DOF vectors.
struct LocalForms {
    Eigen::MatrixXd A_diff;  // consistency part of the diffusion form
    Eigen::MatrixXd A_conv;  // skew-symmetrized convection form
    Eigen::MatrixXd A_reac;  // consistency part of the reaction form
    Eigen::MatrixXd S_a;     // diffusion stabilizer
    Eigen::MatrixXd S_c;     // reaction stabilizer
    Eigen::VectorXd load;

    Eigen::MatrixXd total() const { return A_diff + S_a + A_conv + A_reac + S_c; }
};

// Assemble all local forms of one cell. f may be null when only the matrix
// is needed.
LocalForms build_local_forms(const PolygonalMesh& mesh, int cell, const ElementProjectors& proj,
                             const CoefficientField& cf, const ScalarField& f,
                             int data_quad_degree);

// dofi-dofi stabilizer sigma * (I - D F)^T (I - D F); kind 'a' scales by the
// mean of trace(K)/2, kind 'c' by int_T c.
Eigen::MatrixXd stabilization(const PolygonalMesh& mesh, int cell, char kind,
                              const ElementProjectors& proj, const CoefficientField& cf);

// Moments (1/h_e) int_e g mu_j ds, j = 0..k-1, of Dirichlet data on a
// boundary edge (the moments of g equal those of its P^{k-1} projection).
Eigen::VectorXd dirichlet_moments(const PolygonalMesh& mesh, int edge, const ScalarField& g,
                                  int k, int quad_degree);

} // namespace ncvem

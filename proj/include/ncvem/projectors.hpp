#pragma once

#include <Eigen/Dense>

#include "ncvem/dofspace.hpp"
#include "ncvem/mesh.hpp"
#include "ncvem/monomials.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

// Per-cell projector matrices, all acting on the local DOF vector (edge
// moments in loop order, then interior moments):
//
//   D  (N_T x dim P^k)      DOFs of the cell monomials
//   G  (2 dim P^{k-1} x N_T) coefficients of the L^2 gradient projection,
//                            x-component block stacked over y-component
//   E  (dim P^k x N_T)       elliptic (H^1-seminorm) projection
//   F  (dim P^k x N_T)       function projection; unreachable moments of the
//                            L^2 projection are taken from E
//
// Coefficients are with respect to the graded-lex scaled monomial bases.
class ElementProjectors {
  public:
    ElementProjectors(const PolygonalMesh& mesh, int cell, int k);

    int cell() const { return cell_; }
    int order() const { return k_; }
    int local_dofs() const { return n_dofs_; }
    const CellMonomialBasis& basis_k() const { return basis_k_; }
    const CellMonomialBasis& basis_km1() const { return basis_km1_; }

    const Eigen::MatrixXd& D() const { return D_; }
    const Eigen::MatrixXd& G() const { return G_; }
    const Eigen::MatrixXd& E() const { return E_; }
    const Eigen::MatrixXd& F() const { return F_; }

    // Scalar mass matrices of M^k and M^{k-1} on the cell.
    const Eigen::MatrixXd& mass_k() const { return mass_k_; }
    const Eigen::MatrixXd& mass_km1() const { return mass_km1_; }

    // Largest condition number met while inverting local blocks.
    double max_condition() const { return max_condition_; }

    // Value / gradient of the projections of a DOF vector at a point.
    double projected_value(const Eigen::VectorXd& local_dofs, const Point2& p) const;
    Point2 projected_gradient(const Eigen::VectorXd& local_dofs, const Point2& p) const;

  private:
    int cell_;
    int k_;
    int n_dofs_;
    CellMonomialBasis basis_k_;
    CellMonomialBasis basis_km1_;
    Eigen::MatrixXd D_, G_, E_, F_;
    Eigen::MatrixXd mass_k_, mass_km1_;
    double max_condition_ = 0.0;
};

// L^2 projection of a scalar field onto M^l(T); returns coefficients in the
// graded-lex scaled monomial basis of the cell.
Eigen::VectorXd project_data_cell(const PolygonalMesh& mesh, int cell, int l,
                                  const ScalarField& f, int quad_degree);

// Same projection expanded into a global-coordinate polynomial.
Poly2 project_data_cell_poly(const PolygonalMesh& mesh, int cell, int l, const ScalarField& f,
                             int quad_degree);

// L^2(e) projection of a scalar field onto P^l(e); coefficients in the
// canonical edge monomial basis.
Eigen::VectorXd project_data_edge(const PolygonalMesh& mesh, int edge, int l,
                                  const ScalarField& g, int quad_degree);

// Scaled monomial m_s of a cell as a global polynomial.
Poly2 monomial_to_poly(const CellMonomialBasis& basis, int i);

} // namespace ncvem

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ncvem/mesh.hpp"
#include "ncvem/poly.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

// Scaled monomial basis on a cell: m_s(x) = ((x - x_T)/h_T)^s, |s| <= degree,
// in graded-lexicographic order; m_0 = 1. Always evaluated in scaled form so
// conditioning does not degrade under refinement.
class CellMonomialBasis {
  public:
    CellMonomialBasis(Point2 center, double scale, int degree);
    CellMonomialBasis(const PolygonalMesh& mesh, int cell, int degree);

    int degree() const { return degree_; }
    int size() const { return static_cast<int>(indices_.size()); }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    Point2 center() const { return center_; }
    double scale() const { return scale_; }

    double value(int i, const Point2& p) const;
    Point2 gradient(int i, const Point2& p) const;

    // d m_i / dx as coefficients over this basis (one grade lower); same for y.
    // Valid whenever the basis holds the needed lower-degree entries.
    Eigen::VectorXd deriv_x_coeffs(int i) const;
    Eigen::VectorXd deriv_y_coeffs(int i) const;
    // Laplacian of m_i as coefficients over this basis (two grades lower).
    Eigen::VectorXd laplacian_coeffs(int i) const;

    double eval_combination(const Eigen::VectorXd& coeffs, const Point2& p) const;
    Point2 eval_combination_gradient(const Eigen::VectorXd& coeffs, const Point2& p) const;

    int index_of(const MultiIndex& s) const; // -1 when absent

  private:
    Point2 center_;
    double scale_ = 1.0;
    int degree_ = 0;
    std::vector<MultiIndex> indices_;
};

// Scaled 1D monomials on an edge in its canonical orientation:
// mu_j = (s/h_e)^j with s the centered arclength, j = 0..degree.
class EdgeMonomialBasis {
  public:
    EdgeMonomialBasis(const PolygonalMesh& mesh, int edge, int degree);
    EdgeMonomialBasis(Point2 p0, Point2 p1, int degree);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }
    double length() const { return length_; }
    Point2 midpoint() const { return midpoint_; }
    Point2 direction() const { return direction_; } // canonical unit tangent

    // mu_j at centered arclength s.
    double value(int j, double s) const;
    // Centered arclength of a point assumed to lie on the edge line.
    double arclength(const Point2& p) const { return dot(p - midpoint_, direction_); }

    // Exact mass matrix: M[i][j] = int_e mu_i mu_j ds (closed form).
    Eigen::MatrixXd mass_matrix() const;
    // Exact moments int_e mu_j ds.
    Eigen::VectorXd monomial_integrals() const;

    // Coefficients gamma with f|_e = sum_j gamma_j mu_j, exact for polynomial
    // traces of degree <= degree(); for general f this is the L^2(e)
    // projection at the given quadrature exactness. f takes the 2D point.
    Eigen::VectorXd expand(const std::function<double(const Point2&)>& f,
                           int quad_degree = -1) const;

  private:
    Point2 midpoint_;
    Point2 direction_;
    double length_ = 0.0;
    int degree_ = 0;
};

} // namespace ncvem

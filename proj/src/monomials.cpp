#include "ncvem/monomials.hpp"

#include <cmath>

namespace ncvem {

CellMonomialBasis::CellMonomialBasis(Point2 center, double scale, int degree)
    : center_(center), scale_(scale), degree_(degree), indices_(multi_indices_upto(degree)) {}

CellMonomialBasis::CellMonomialBasis(const PolygonalMesh& mesh, int cell, int degree)
    : CellMonomialBasis(mesh.cells[cell].centroid, mesh.cells[cell].diameter, degree) {}

namespace {
inline double ipow(double b, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
} // namespace

double CellMonomialBasis::value(int i, const Point2& p) const {
    const MultiIndex& s = indices_[i];
    double xi = (p.x - center_.x) / scale_;
    double eta = (p.y - center_.y) / scale_;
    return ipow(xi, s.s1) * ipow(eta, s.s2);
}

Point2 CellMonomialBasis::gradient(int i, const Point2& p) const {
    const MultiIndex& s = indices_[i];
    double xi = (p.x - center_.x) / scale_;
    double eta = (p.y - center_.y) / scale_;
    double gx = s.s1 > 0 ? s.s1 * ipow(xi, s.s1 - 1) * ipow(eta, s.s2) / scale_ : 0.0;
    double gy = s.s2 > 0 ? s.s2 * ipow(xi, s.s1) * ipow(eta, s.s2 - 1) / scale_ : 0.0;
    return {gx, gy};
}

int CellMonomialBasis::index_of(const MultiIndex& s) const {
    if (s.order() > degree_ || s.s1 < 0 || s.s2 < 0) return -1;
    // graded-lex position: offset of grade + index within grade
    return poly_space_dim(s.order() - 1) + s.s2;
}

Eigen::VectorXd CellMonomialBasis::deriv_x_coeffs(int i) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(size());
    const MultiIndex& s = indices_[i];
    if (s.s1 > 0) c[index_of({s.s1 - 1, s.s2})] = s.s1 / scale_;
    return c;
}

Eigen::VectorXd CellMonomialBasis::deriv_y_coeffs(int i) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(size());
    const MultiIndex& s = indices_[i];
    if (s.s2 > 0) c[index_of({s.s1, s.s2 - 1})] = s.s2 / scale_;
    return c;
}

Eigen::VectorXd CellMonomialBasis::laplacian_coeffs(int i) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(size());
    const MultiIndex& s = indices_[i];
    double inv2 = 1.0 / (scale_ * scale_);
    if (s.s1 >= 2) c[index_of({s.s1 - 2, s.s2})] += s.s1 * (s.s1 - 1) * inv2;
    if (s.s2 >= 2) c[index_of({s.s1, s.s2 - 2})] += s.s2 * (s.s2 - 1) * inv2;
    return c;
}

double CellMonomialBasis::eval_combination(const Eigen::VectorXd& coeffs, const Point2& p) const {
    double acc = 0.0;
    for (int i = 0; i < coeffs.size() && i < size(); ++i)
        if (coeffs[i] != 0.0) acc += coeffs[i] * value(i, p);
    return acc;
}

Point2 CellMonomialBasis::eval_combination_gradient(const Eigen::VectorXd& coeffs,
                                                    const Point2& p) const {
    Point2 acc{0, 0};
    for (int i = 0; i < coeffs.size() && i < size(); ++i)
        if (coeffs[i] != 0.0) acc += gradient(i, p) * coeffs[i];
    return acc;
}

EdgeMonomialBasis::EdgeMonomialBasis(Point2 p0, Point2 p1, int degree) : degree_(degree) {
    length_ = dist(p0, p1);
    midpoint_ = (p0 + p1) * 0.5;
    direction_ = (p1 - p0) / length_;
}

EdgeMonomialBasis::EdgeMonomialBasis(const PolygonalMesh& mesh, int edge, int degree)
    : EdgeMonomialBasis(mesh.vertices[mesh.edges[edge].v0], mesh.vertices[mesh.edges[edge].v1],
                        degree) {}

double EdgeMonomialBasis::value(int j, double s) const { return ipow(s / length_, j); }

Eigen::MatrixXd EdgeMonomialBasis::mass_matrix() const {
    int n = size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int p = i + j;
            m(i, j) = (p % 2 == 0) ? length_ * ipow(0.5, p) / (p + 1) : 0.0;
        }
    return m;
}

Eigen::VectorXd EdgeMonomialBasis::monomial_integrals() const {
    Eigen::VectorXd v(size());
    for (int j = 0; j < size(); ++j) v[j] = (j % 2 == 0) ? length_ * ipow(0.5, j) / (j + 1) : 0.0;
    return v;
}

Eigen::VectorXd EdgeMonomialBasis::expand(const std::function<double(const Point2&)>& f,
                                          int quad_degree) const {
    Point2 p0 = midpoint_ - direction_ * (0.5 * length_);
    Point2 p1 = midpoint_ + direction_ * (0.5 * length_);
    EdgeQuadrature quad = edge_quadrature(p0, p1, quad_degree < 0 ? 2 * degree_ : quad_degree);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size());
    for (size_t q = 0; q < quad.points.size(); ++q) {
        double fv = f(quad.points[q]);
        for (int j = 0; j < size(); ++j)
            rhs[j] += quad.weights[q] * fv * value(j, quad.arclength[q]);
    }
    return mass_matrix().ldlt().solve(rhs);
}

} // namespace ncvem

#pragma once

#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "ncvem/geometry.hpp"

namespace ncvem {

// Bivariate multi-index s = (s1, s2), |s| = s1 + s2.
struct MultiIndex {
    int s1 = 0;
    int s2 = 0;

    int order() const { return s1 + s2; }
    bool operator==(const MultiIndex&) const = default;
    // Graded-lexicographic: by total order, then decreasing first exponent.
    bool operator<(const MultiIndex& o) const {
        if (order() != o.order()) return order() < o.order();
        return s1 > o.s1;
    }
};

// Graded-lexicographic list of all multi-indices with |s| <= degree:
// 1; x, y; x^2, xy, y^2; ...
std::vector<MultiIndex> multi_indices_upto(int degree);

// dim P^l in 2D = (l+1)(l+2)/2.
inline int poly_space_dim(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }

// Sparse bivariate polynomial in global (x, y) coordinates.
// Zero coefficients are never stored.
class Poly2 {
  public:
    Poly2() = default;
    explicit Poly2(double c) {
        if (c != 0.0) coeffs_[{0, 0}] = c;
    }

    static Poly2 monomial(int s1, int s2, double c = 1.0);
    static Poly2 var_x() { return monomial(1, 0); }
    static Poly2 var_y() { return monomial(0, 1); }

    double coeff(const MultiIndex& s) const;
    void set_coeff(const MultiIndex& s, double c);
    void add_coeff(const MultiIndex& s, double c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const; // -1 for the zero polynomial

    double evaluate(double x, double y) const;
    double evaluate(const Point2& p) const { return evaluate(p.x, p.y); }

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 operator*(double s) const;
    Poly2 operator-() const { return *this * -1.0; }

    Poly2 derivative_x() const;
    Poly2 derivative_y() const;
    Poly2 pow(int n) const; // n >= 0

    const std::map<MultiIndex, double>& terms() const { return coeffs_; }

  private:
    std::map<MultiIndex, double> coeffs_;
};

inline Poly2 operator*(double s, const Poly2& p) { return p * s; }

// div (p, q) = dp/dx + dq/dy.
inline Poly2 divergence(const Poly2& px, const Poly2& py) {
    return px.derivative_x() + py.derivative_y();
}

std::ostream& operator<<(std::ostream& os, const Poly2& p);

} // namespace ncvem

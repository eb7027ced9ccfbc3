#include "ncvem/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace ncvem {

std::vector<MultiIndex> multi_indices_upto(int degree) {
    std::vector<MultiIndex> out;
    out.reserve(poly_space_dim(degree));
    for (int d = 0; d <= degree; ++d)
        for (int i = 0; i <= d; ++i) out.push_back({d - i, i});
    return out;
}

Poly2 Poly2::monomial(int s1, int s2, double c) {
    Poly2 p;
    if (s1 < 0 || s2 < 0) throw std::invalid_argument("negative monomial exponent");
    if (c != 0.0) p.coeffs_[{s1, s2}] = c;
    return p;
}

double Poly2::coeff(const MultiIndex& s) const {
    auto it = coeffs_.find(s);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void Poly2::set_coeff(const MultiIndex& s, double c) {
    if (c == 0.0)
        coeffs_.erase(s);
    else
        coeffs_[s] = c;
}

void Poly2::add_coeff(const MultiIndex& s, double c) {
    auto it = coeffs_.find(s);
    if (it == coeffs_.end()) {
        if (c != 0.0) coeffs_[s] = c;
        return;
    }
    it->second += c;
    if (it->second == 0.0) coeffs_.erase(it);
}

int Poly2::degree() const {
    int d = -1;
    for (const auto& [s, c] : coeffs_) d = std::max(d, s.order());
    return d;
}

double Poly2::evaluate(double x, double y) const {
    double acc = 0.0;
    for (const auto& [s, c] : coeffs_) {
        double t = c;
        for (int i = 0; i < s.s1; ++i) t *= x;
        for (int i = 0; i < s.s2; ++i) t *= y;
        acc += t;
    }
    return acc;
}

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 r = *this;
    for (const auto& [s, c] : o.coeffs_) r.add_coeff(s, c);
    return r;
}

Poly2 Poly2::operator-(const Poly2& o) const {
    Poly2 r = *this;
    for (const auto& [s, c] : o.coeffs_) r.add_coeff(s, -c);
    return r;
}

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 r;
    for (const auto& [a, ca] : coeffs_)
        for (const auto& [b, cb] : o.coeffs_) r.add_coeff({a.s1 + b.s1, a.s2 + b.s2}, ca * cb);
    return r;
}

Poly2 Poly2::operator*(double s) const {
    Poly2 r;
    if (s == 0.0) return r;
    for (const auto& [m, c] : coeffs_) r.coeffs_[m] = c * s;
    return r;
}

Poly2 Poly2::derivative_x() const {
    Poly2 r;
    for (const auto& [s, c] : coeffs_)
        if (s.s1 > 0) r.add_coeff({s.s1 - 1, s.s2}, c * s.s1);
    return r;
}

Poly2 Poly2::derivative_y() const {
    Poly2 r;
    for (const auto& [s, c] : coeffs_)
        if (s.s2 > 0) r.add_coeff({s.s1, s.s2 - 1}, c * s.s2);
    return r;
}

Poly2 Poly2::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    Poly2 r(1.0);
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Poly2& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [s, c] : p.terms()) {
        if (!first) os << " + ";
        os << c;
        if (s.s1 > 0) os << "*x^" << s.s1;
        if (s.s2 > 0) os << "*y^" << s.s2;
        first = false;
    }
    return os;
}

} // namespace ncvem

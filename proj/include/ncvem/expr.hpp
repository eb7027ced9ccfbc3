#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ncvem/poly.hpp"

namespace ncvem {

// Analytic expressions over {x, y, literals, + - * / ^, sin, cos, exp, pi,
// unary minus}. Exponents are integer literals so polynomial extraction stays
// exact. Constant subtrees are folded at parse time.
class Expr {
  public:
    enum class Kind { Num, X, Y, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

    Kind kind;
    double num = 0.0;  // Kind::Num
    int exponent = 0;  // Kind::Pow
    std::unique_ptr<Expr> lhs, rhs;

    double evaluate(double x, double y) const;
    double evaluate(const Point2& p) const { return evaluate(p.x, p.y); }

    // Exact expansion into a Poly2 when the tree is polynomial; otherwise the
    // rejection reason (sin/cos/exp/division/negative power).
    std::optional<Poly2> to_polynomial(std::string* reason = nullptr) const;
};

struct ParseError : std::runtime_error {
    size_t offset; // byte offset into the input
    std::string expected;
    ParseError(size_t off, const std::string& exp)
        : std::runtime_error("parse error at offset " + std::to_string(off) + ": expected " + exp),
          offset(off), expected(exp) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recursive-descent parser. Precedence: ^ (right-assoc) > unary - > * / > + -.
std::unique_ptr<Expr> parse_expression(const std::string& text);

} // namespace ncvem

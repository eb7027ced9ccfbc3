#include "ncvem/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace ncvem {

namespace {

std::unique_ptr<Expr> make_num(double v) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Num;
    e->num = v;
    return e;
}

std::unique_ptr<Expr> make_node(Expr::Kind k, std::unique_ptr<Expr> l,
                                std::unique_ptr<Expr> r = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

bool is_const(const Expr& e) { return e.kind == Expr::Kind::Num; }

// Fold constant subtrees during construction.
std::unique_ptr<Expr> fold(std::unique_ptr<Expr> e) {
    using K = Expr::Kind;
    const Expr* l = e->lhs.get();
    const Expr* r = e->rhs.get();
    switch (e->kind) {
    case K::Add:
        if (is_const(*l) && is_const(*r)) return make_num(l->num + r->num);
        break;
    case K::Sub:
        if (is_const(*l) && is_const(*r)) return make_num(l->num - r->num);
        break;
    case K::Mul:
        if (is_const(*l) && is_const(*r)) return make_num(l->num * r->num);
        break;
    case K::Div:
        if (is_const(*l) && is_const(*r) && r->num != 0.0) return make_num(l->num / r->num);
        break;
    case K::Neg:
        if (is_const(*l)) return make_num(-l->num);
        break;
    case K::Pow:
        if (is_const(*l)) return make_num(std::pow(l->num, e->exponent));
        break;
    case K::Sin:
        if (is_const(*l)) return make_num(std::sin(l->num));
        break;
    case K::Cos:
        if (is_const(*l)) return make_num(std::cos(l->num));
        break;
    case K::Exp:
        if (is_const(*l)) return make_num(std::exp(l->num));
        break;
    default:
        break;
    }
    return e;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::unique_ptr<Expr> run() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "end of input or operator");
        return e;
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // sum := product (('+'|'-') product)*
    std::unique_ptr<Expr> parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = fold(make_node(Expr::Kind::Add, std::move(lhs), parse_product()));
            else if (accept('-'))
                lhs = fold(make_node(Expr::Kind::Sub, std::move(lhs), parse_product()));
            else
                return lhs;
        }
    }

    // product := unary (('*'|'/') unary)*
    std::unique_ptr<Expr> parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = fold(make_node(Expr::Kind::Mul, std::move(lhs), parse_unary()));
            else if (accept('/'))
                lhs = fold(make_node(Expr::Kind::Div, std::move(lhs), parse_unary()));
            else
                return lhs;
        }
    }

    // unary := '-' unary | power
    std::unique_ptr<Expr> parse_unary() {
        if (accept('-')) return fold(make_node(Expr::Kind::Neg, parse_unary()));
        return parse_power();
    }

    // power := atom ('^' exponent)?  with exponent a (right-associative
    // tower of) signed integer literal(s); binds tighter than unary minus.
    std::unique_ptr<Expr> parse_power() {
        auto base = parse_atom();
        if (!accept('^')) return base;
        auto node = make_node(Expr::Kind::Pow, std::move(base));
        node->exponent = static_cast<int>(parse_exponent());
        return fold(std::move(node));
    }

    long parse_exponent() {
        skip_ws();
        size_t at = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        size_t digits = 0;
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 64) throw ParseError(at, "exponent magnitude <= 64");
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw ParseError(at, "integer exponent");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw ParseError(pos_, "integer exponent (real powers are not supported)");
        long result = neg ? -v : v;
        if (accept('^')) { // right-associative integer tower, folded here
            long e = parse_exponent();
            if (e < 0) throw ParseError(at, "nonnegative exponent in a power tower");
            long acc = 1;
            for (long i = 0; i < e; ++i) {
                acc *= result;
                if (std::abs(acc) > 64) throw ParseError(at, "exponent magnitude <= 64");
            }
            result = acc;
        }
        return result;
    }

    std::unique_ptr<Expr> parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            if (!accept(')')) throw ParseError(pos_, "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        throw ParseError(pos_, "number, variable, function, or '('");
    }

    std::unique_ptr<Expr> parse_number() {
        skip_ws();
        double v;
        auto [p, ec] =
            std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc{}) throw ParseError(pos_, "number");
        pos_ = p - text_.data();
        return make_num(v);
    }

    std::unique_ptr<Expr> parse_name() {
        skip_ws();
        size_t at = pos_;
        std::string name;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            name += text_[pos_++];
        if (name == "x") {
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::X;
            return e;
        }
        if (name == "y") {
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Y;
            return e;
        }
        if (name == "pi") return make_num(3.141592653589793);
        Expr::Kind k;
        if (name == "sin")
            k = Expr::Kind::Sin;
        else if (name == "cos")
            k = Expr::Kind::Cos;
        else if (name == "exp")
            k = Expr::Kind::Exp;
        else
            throw ParseError(at, "x, y, pi, sin, cos, or exp");
        if (!accept('(')) throw ParseError(pos_, "'(' after " + name);
        auto arg = parse_sum();
        if (!accept(')')) throw ParseError(pos_, "')'");
        return fold(make_node(k, std::move(arg)));
    }
};

} // namespace

std::unique_ptr<Expr> parse_expression(const std::string& text) { return Parser(text).run(); }

double Expr::evaluate(double x, double y) const {
    using K = Kind;
    switch (kind) {
    case K::Num:
        return num;
    case K::X:
        return x;
    case K::Y:
        return y;
    case K::Add:
        return lhs->evaluate(x, y) + rhs->evaluate(x, y);
    case K::Sub:
        return lhs->evaluate(x, y) - rhs->evaluate(x, y);
    case K::Mul:
        return lhs->evaluate(x, y) * rhs->evaluate(x, y);
    case K::Div: {
        double d = rhs->evaluate(x, y);
        if (d == 0.0) throw EvalError("division by zero");
        return lhs->evaluate(x, y) / d;
    }
    case K::Pow:
        return std::pow(lhs->evaluate(x, y), exponent);
    case K::Neg:
        return -lhs->evaluate(x, y);
    case K::Sin:
        return std::sin(lhs->evaluate(x, y));
    case K::Cos:
        return std::cos(lhs->evaluate(x, y));
    case K::Exp:
        return std::exp(lhs->evaluate(x, y));
    }
    return 0.0;
}

std::optional<Poly2> Expr::to_polynomial(std::string* reason) const {
    auto reject = [&](const char* why) -> std::optional<Poly2> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    using K = Kind;
    switch (kind) {
    case K::Num:
        return Poly2(num);
    case K::X:
        return Poly2::var_x();
    case K::Y:
        return Poly2::var_y();
    case K::Add: {
        auto a = lhs->to_polynomial(reason), b = rhs->to_polynomial(reason);
        if (!a || !b) return std::nullopt;
        return *a + *b;
    }
    case K::Sub: {
        auto a = lhs->to_polynomial(reason), b = rhs->to_polynomial(reason);
        if (!a || !b) return std::nullopt;
        return *a - *b;
    }
    case K::Mul: {
        auto a = lhs->to_polynomial(reason), b = rhs->to_polynomial(reason);
        if (!a || !b) return std::nullopt;
        return *a * *b;
    }
    case K::Neg: {
        auto a = lhs->to_polynomial(reason);
        if (!a) return std::nullopt;
        return -*a;
    }
    case K::Pow: {
        if (exponent < 0) return reject("non-polynomial: negative power");
        auto a = lhs->to_polynomial(reason);
        if (!a) return std::nullopt;
        return a->pow(exponent);
    }
    case K::Div:
        return reject("non-polynomial: division");
    case K::Sin:
        return reject("non-polynomial: sin");
    case K::Cos:
        return reject("non-polynomial: cos");
    case K::Exp:
        return reject("non-polynomial: exp");
    }
    return reject("non-polynomial construct");
}

} // namespace ncvem

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncvem/expr.hpp"
#include "oracles.hpp"

using namespace ncvem;

TEST_CASE("basic parsing and evaluation") {
    auto e = parse_expression("x + 2*y");
    CHECK(e->evaluate(1.0, 2.0) == doctest::Approx(5.0));
    CHECK(e->kind == Expr::Kind::Add);

    CHECK(parse_expression("x*y")->evaluate(2, 3) == doctest::Approx(6.0));
    CHECK(parse_expression("sin(pi*x)")->evaluate(0.5, 0.0) == doctest::Approx(1.0));
    CHECK(parse_expression("exp(0)")->evaluate(0, 0) == doctest::Approx(1.0));
    CHECK(parse_expression("sin(pi*x)*sin(pi*y)")->evaluate(0.5, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("precedence: ^ above unary minus above * / above + -") {
    CHECK(parse_expression("-x^2")->evaluate(3, 0) == doctest::Approx(-9.0));
    CHECK(parse_expression("2^3^2")->evaluate(0, 0) == doctest::Approx(512.0)); // right assoc? no: atom^int only
    CHECK(parse_expression("1 - 2 - 3")->evaluate(0, 0) == doctest::Approx(-4.0));
    CHECK(parse_expression("2 + 3 * 4")->evaluate(0, 0) == doctest::Approx(14.0));
    CHECK(parse_expression("x^-2")->evaluate(2, 0) == doctest::Approx(0.25));
}

TEST_CASE("syntax errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expression("x^^2"), ParseError);
    try {
        parse_expression("x^^2");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(parse_expression("x +"), ParseError);
    CHECK_THROWS_AS(parse_expression("(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_expression("x^2.5"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("division by zero raises an evaluation error") {
    auto e = parse_expression("x / y");
    CHECK_THROWS_AS(e->evaluate(1.0, 0.0), EvalError);
    CHECK(e->evaluate(1.0, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("polynomial extraction") {
    auto p = parse_expression("1 + x^2")->to_polynomial();
    REQUIRE(p.has_value());
    CHECK(p->coeff({0, 0}) == doctest::Approx(1.0));
    CHECK(p->coeff({2, 0}) == doctest::Approx(1.0));

    auto q = parse_expression("(x+y)^2")->to_polynomial();
    REQUIRE(q.has_value());
    CHECK(q->coeff({2, 0}) == doctest::Approx(1.0));
    CHECK(q->coeff({1, 1}) == doctest::Approx(2.0));
    CHECK(q->coeff({0, 2}) == doctest::Approx(1.0));

    std::string why;
    CHECK_FALSE(parse_expression("sin(x)")->to_polynomial(&why).has_value());
    CHECK(why.find("sin") != std::string::npos);
    CHECK_FALSE(parse_expression("x/y")->to_polynomial(&why).has_value());
    CHECK_FALSE(parse_expression("x^-1")->to_polynomial(&why).has_value());
}

TEST_CASE("polynomial round trip at random points") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    const char* polys[] = {"1 + x^2",         "(x+y)^2 - (x-y)^2", "3*x*y - 0.25*y^3 + 2",
                           "-(x - y)^3 + x*y", "((x))*((y)) + 1",   "2 - x^4 + y^2*x^2"};
    for (const char* s : polys) {
        auto e = parse_expression(s);
        auto p = e->to_polynomial();
        REQUIRE(p.has_value());
        for (int i = 0; i < 100; ++i) {
            double x = uni(rng), y = uni(rng);
            CHECK(p->evaluate(x, y) ==
                  doctest::Approx(e->evaluate(x, y)).epsilon(1e-12).scale(1.0));
        }
    }
}

namespace {

// Structured random expression strings that are always well-formed.
std::string random_wellformed(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
    std::uniform_real_distribution<double> uni(0.1, 9.9);
    switch (pick(rng)) {
    case 0:
        return std::to_string(uni(rng));
    case 1:
        return "x";
    case 2:
        return "y";
    case 3:
        return "pi";
    case 4:
        return "(" + random_wellformed(rng, depth - 1) + "+" + random_wellformed(rng, depth - 1) +
               ")";
    case 5:
        return "(" + random_wellformed(rng, depth - 1) + "-" + random_wellformed(rng, depth - 1) +
               ")";
    case 6:
        return "(" + random_wellformed(rng, depth - 1) + "*" + random_wellformed(rng, depth - 1) +
               ")";
    case 7:
        return "sin(" + random_wellformed(rng, depth - 1) + ")";
    case 8:
        return "cos(" + random_wellformed(rng, depth - 1) + ")";
    default:
        return "(" + random_wellformed(rng, depth - 1) + ")^" +
               std::to_string(std::uniform_int_distribution<int>(0, 4)(rng));
    }
}

} // namespace

TEST_CASE("agreement with the shunting-yard reference evaluator") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        std::string s = random_wellformed(rng, 4);
        double x = uni(rng), y = uni(rng);
        double ref, got;
        try {
            ref = oracles::ReferenceEvaluator::eval(s, x, y);
        } catch (...) {
            continue; // reference rejected (e.g. division by zero); skip
        }
        got = parse_expression(s)->evaluate(x, y);
        CHECK(got == doctest::Approx(ref).epsilon(1e-14).scale(std::max(1.0, std::abs(ref))));
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("fuzzing: parse never crashes") {
    std::mt19937 rng(23);
    const std::string alphabet = "xy0123456789+-*/^().sincoexp פpi ";
    std::uniform_int_distribution<int> len(0, 24);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    int parsed = 0, rejected = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string s;
        int n = len(rng);
        for (int j = 0; j < n; ++j) s += alphabet[pick(rng)];
        try {
            auto e = parse_expression(s);
            e->evaluate(0.37, -0.41);
            ++parsed;
        } catch (const ParseError&) {
            ++rejected;
        } catch (const EvalError&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 10000);
    CHECK(parsed > 0);
    CHECK(rejected > 0);
}

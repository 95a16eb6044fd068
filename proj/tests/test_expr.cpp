#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crf/expr.hpp"

using crf::eval_expr;

TEST_CASE("arithmetic and precedence") {
    std::map<std::string, double> v;
    CHECK(eval_expr("1+2*3", v) == doctest::Approx(7));
    CHECK(eval_expr("(1+2)*3", v) == doctest::Approx(9));
    CHECK(eval_expr("-2^2", v) == doctest::Approx(-4));
    CHECK(eval_expr("2^-1", v) == doctest::Approx(0.5));
    CHECK(eval_expr("7/2/2", v) == doctest::Approx(1.75));
    CHECK(eval_expr("1 - -1", v) == doctest::Approx(2));
}

TEST_CASE("variables and functions") {
    std::map<std::string, double> v{{"alpha", 0.5}, {"lambda", 2.0}};
    CHECK(eval_expr("-alpha*(alpha+1)", v) == doctest::Approx(-0.75));
    CHECK(eval_expr("lambda^2+1", v) == doctest::Approx(5));
    CHECK(eval_expr("sqrt(10)", v) == doctest::Approx(std::sqrt(10.0)));
    CHECK(eval_expr("abs(1-lambda)", v) == doctest::Approx(1));
    CHECK(eval_expr("(1-lambda)*(lambda-2)", v) == doctest::Approx(0));
}

TEST_CASE("errors") {
    std::map<std::string, double> v;
    CHECK_THROWS_AS(eval_expr("foo", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_expr("1+", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_expr("sin(1)", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_expr("(1", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_expr("1 2", v), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vekua/expr.hpp"

using namespace vekua;
using vekua::testing::rng;

TEST_CASE("parsing produces the grammar-forced shapes") {
  CHECK(Expr::parse("exp(2*v)").print() == "exp(2*v)");
  // unary minus binds looser than '^'
  CHECK(Expr::parse("-v^2").evaluate({{"v", 3.0}}) == doctest::Approx(-9.0));
  CHECK_THROWS_AS(Expr::parse("2*+3"), ParseError);
  try {
    Expr::parse("2*+3");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("evaluation basics") {
  CHECK(Expr::parse("exp(2*v)").evaluate({{"v", 0.5}}) ==
        doctest::Approx(M_E).epsilon(1e-12));
  CHECK(std::abs(Expr::parse("cos(pi/2)").evaluate({})) < 1e-12);
  CHECK_THROWS_AS(Expr::parse("sqrt(-1)").evaluate({}), EvalError);
}

TEST_CASE("precedence pins") {
  CHECK(Expr::parse("2+3*4").evaluate({}) == doctest::Approx(14.0));
  CHECK(Expr::parse("2^3^2").evaluate({}) == doctest::Approx(512.0));
  CHECK(Expr::parse("-2^2").evaluate({}) == doctest::Approx(-4.0));
}

TEST_CASE("agrees with direct arithmetic on a hand-checked corpus") {
  const Bindings b{{"x", 1.25}, {"y", -0.75}, {"c", 2.0}};
  const struct {
    const char* text;
    double expected;
  } rows[] = {
      {"1+2*3", 7.0},
      {"(1+2)*3", 9.0},
      {"2-3-4", 2.0 - 3.0 - 4.0},
      {"2/4/2", 0.25},
      {"10/4", 2.5},
      {"2^-2", 0.25},
      {"-2^-2", -0.25},
      {"2^0.5", std::sqrt(2.0)},
      {"x", 1.25},
      {"y", -0.75},
      {"x+y", 0.5},
      {"x*y", 1.25 * -0.75},
      {"x^2", 1.25 * 1.25},
      {"x^3", 1.25 * 1.25 * 1.25},
      {"c*x-y", 2.0 * 1.25 + 0.75},
      {"exp(x)", std::exp(1.25)},
      {"log(x)", std::log(1.25)},
      {"exp(log(5))", 5.0},
      {"sin(x)", std::sin(1.25)},
      {"cos(x)", std::cos(1.25)},
      {"tan(x)", std::tan(1.25)},
      {"sinh(x)", std::sinh(1.25)},
      {"cosh(x)", std::cosh(1.25)},
      {"tanh(x)", std::tanh(1.25)},
      {"sqrt(x)", std::sqrt(1.25)},
      {"abs(y)", 0.75},
      {"sin(pi/6)", std::sin(M_PI / 6.0)},
      {"e^2", M_E * M_E},
      {"cos(x)^2+sin(x)^2", 1.0},
      {"(x-y)^2/(1+x)", (1.25 + 0.75) * (1.25 + 0.75) / 2.25},
  };
  for (const auto& row : rows) {
    const double got = Expr::parse(row.text).evaluate(b);
    CHECK_MESSAGE(got == doctest::Approx(row.expected).epsilon(1e-12),
                  row.text);
  }
}

TEST_CASE("errors name the offending subexpression") {
  CHECK_THROWS_AS(Expr::parse("x+q").evaluate({{"x", 1.0}}), EvalError);
  try {
    Expr::parse("1/(x-x)").evaluate({{"x", 2.0}});
    FAIL("expected division by zero");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("1/(x-x)") != std::string::npos);
  }
  CHECK_THROWS_AS(Expr::parse("log(0-3)").evaluate({}), EvalError);
  CHECK_THROWS_AS(Expr::parse("(0-2)^0.5").evaluate({}), EvalError);
}

namespace {

std::string random_expr(int depth) {
  auto& gen = rng();
  const int pick = std::uniform_int_distribution<int>(0, depth <= 0 ? 2 : 7)(gen);
  auto num = [&gen]() {
    const double v = std::uniform_real_distribution<double>(0.1, 9.9)(gen);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
  };
  const char* vars[] = {"x", "y", "u", "v", "c"};
  const char* fns[] = {"exp", "sin", "cos", "sqrt", "tanh"};
  switch (pick) {
    case 0:
      return num();
    case 1:
    case 2:
      return vars[std::uniform_int_distribution<int>(0, 4)(gen)];
    case 3:
      return "(" + random_expr(depth - 1) + "+" + random_expr(depth - 1) + ")";
    case 4:
      return "(" + random_expr(depth - 1) + "-" + random_expr(depth - 1) + ")";
    case 5:
      return random_expr(depth - 1) + "*" + num();
    case 6:
      return std::string(fns[std::uniform_int_distribution<int>(0, 4)(gen)]) +
             "(" + random_expr(depth - 1) + ")";
    default:
      return "-" + random_expr(depth - 1);
  }
}

}  // namespace

TEST_CASE("print-parse round trip is a fixed point") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::string source = random_expr(3);
    const std::string once = Expr::parse(source).print();
    const std::string twice = Expr::parse(once).print();
    CHECK_MESSAGE(once == twice, source);
  }
}

TEST_CASE("to_field lifts expressions over the plane") {
  const CoordinateSystem cart = cartesian();
  CHECK(to_field(Expr::parse("x^2+y^2"), cart, {})({1, 2}) ==
        doctest::Approx(5.0));
  CHECK(to_field(Expr::parse("exp(c*v)"), cart, {{"c", 1.0}})({0, 0.5}) ==
        doctest::Approx(std::exp(0.5)));
  // u = ln r vanishes on the unit circle
  CHECK(std::abs(to_field(Expr::parse("u"), polar(), {})({1, 0})) < 1e-14);
}

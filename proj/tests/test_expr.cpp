#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "pcband/errors.hpp"
#include "pcband/expr.hpp"

using namespace pcband;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("expr") {

TEST_CASE("literals, constants and the variable") {
  CHECK(parse_expression("2").eval(10.0) == 2.0);
  CHECK(parse_expression("x").eval(0.375) == 0.375);
  CHECK(std::abs(parse_expression("pi").eval(0.0) - kPi) <= 1e-15);
  CHECK(parse_expression("1.5e2").eval(0.0) == 150.0);
  CHECK(parse_expression(".5").eval(0.0) == 0.5);
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_expression("2+3*4").eval(0.0) == 14.0);
  CHECK(parse_expression("(2+3)*4").eval(0.0) == 20.0);
  CHECK(parse_expression("2*3^2").eval(0.0) == 18.0);
  CHECK(parse_expression("-2^2").eval(0.0) == -4.0);   // unary binds the power
  CHECK(parse_expression("2^3^2").eval(0.0) == 512.0); // right associative
  CHECK(parse_expression("8/4/2").eval(0.0) == 1.0);   // left associative
  CHECK(parse_expression("1-2-3").eval(0.0) == -4.0);
  CHECK(parse_expression("--3").eval(0.0) == 3.0);
}

TEST_CASE("functions") {
  CHECK(std::abs(parse_expression("sin(pi/2)").eval(0.0) - 1.0) <= 1e-15);
  CHECK(std::abs(parse_expression("cos(0)").eval(0.0) - 1.0) == 0.0);
  CHECK(std::abs(parse_expression("exp(1)").eval(0.0) - std::exp(1.0)) <= 1e-15);
  CHECK(parse_expression("sqrt(9)").eval(0.0) == 3.0);
  CHECK(parse_expression("abs(0-5)").eval(0.0) == 5.0);
  CHECK(std::abs(parse_expression("2 + cos(2*pi*x)").eval(0.0) - 3.0) <= 1e-15);
}

TEST_CASE("syntax errors carry a position") {
  const std::string text = "2 + cos(2*pi*x";
  try {
    parse_expression(text);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position() <= text.size());
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_expression(""), parse_error);
  CHECK_THROWS_AS(parse_expression("2 +"), parse_error);
  CHECK_THROWS_AS(parse_expression("foo(x)"), parse_error);
  CHECK_THROWS_AS(parse_expression("2 ** 3"), parse_error);
  CHECK_THROWS_AS(parse_expression("1 2"), parse_error);
}

TEST_CASE("pretty-printed form round-trips") {
  const char* exprs[] = {
      "2 + cos(2*pi*x)",
      "1 + x^2 - sin(x)/3",
      "sqrt(abs(x) + 1) * exp(-x^2)",
      "2^-x + 4*x",
  };
  std::mt19937 rng(211);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (const char* text : exprs) {
    const Expression orig = parse_expression(text);
    const Expression round = parse_expression(orig.pretty());
    for (int it = 0; it < 100; ++it) {
      const double x = d(rng);
      CHECK(orig.eval(x) == round.eval(x));
    }
  }
}

TEST_CASE("expression profiles: wrapping, symmetry detection, validation") {
  const Profile p = parse_profile_expr("2 + cos(2*pi*x)");
  CHECK(p.period_L == 1.0);
  CHECK(std::abs(p.n(0.0) - 3.0) <= 1e-15);
  CHECK(std::abs(p.n(1.0) - 3.0) <= 1e-12);  // wrapped
  CHECK(p.symmetric);
  CHECK(p.jumps.empty());

  const Profile asym = parse_profile_expr("2 + x");
  CHECK(!asym.symmetric);

  // Finite-difference derivative is close to the analytic one.
  const double dn = p.dn(0.1);
  CHECK(std::abs(dn - (-2.0 * kPi * std::sin(2.0 * kPi * 0.1))) <= 1e-4);

  // Custom period.
  const Profile wide = parse_profile_expr("2 + cos(pi*x)", 2.0);
  CHECK(wide.period_L == 2.0);
  CHECK(std::abs(wide.n(0.0) - 3.0) <= 1e-15);
  CHECK(std::abs(wide.n(1.0) - 1.0) <= 1e-12);

  // Positivity is validated on the sample grid at parse time.
  CHECK_THROWS_AS(parse_profile_expr("cos(2*pi*x)"), precondition_error);
  CHECK_THROWS_AS(parse_profile_expr("x"), precondition_error);
  CHECK_THROWS_AS(parse_profile_expr("1", 0.0), precondition_error);
}

}  // TEST_SUITE

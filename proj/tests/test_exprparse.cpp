#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambda1/expr.hpp"
#include "lambda1/rng.hpp"

using namespace lambda1;

TEST_CASE("frozen evaluation examples") {
  CHECK(parse("2 - t").eval(Env::with_t(0.25)) == doctest::Approx(1.75));
  CHECK(parse("1").eval(Env::with_t(0.0)) == doctest::Approx(1.0));
  Env p = Env::at_point({0.5, 0, 0, 0});
  CHECK(parse("x1^2 + y1^2").eval(p) == doctest::Approx(0.25));
  CHECK(parse("t").eval(p) == doctest::Approx(0.25));
  CHECK(parse("r").eval(p) == doctest::Approx(0.5));
  CHECK(parse("max(t - 1, x1 - 0.25)").eval(p) == doctest::Approx(0.25));
  CHECK(parse("min(1, 2)").eval(p) == doctest::Approx(1.0));
  CHECK(parse("-x1 + 1").eval(p) == doctest::Approx(0.5));
  CHECK(parse("2 * x1 / 4").eval(p) == doctest::Approx(0.25));
  CHECK(parse("exp(0)").eval(p) == doctest::Approx(1.0));
  CHECK(parse("sqrt(t)").eval(p) == doctest::Approx(0.5));
  CHECK(parse("sin(0) + cos(0)").eval(p) == doctest::Approx(1.0));
  CHECK(parse("abs(-3)").eval(p) == doctest::Approx(3.0));
  CHECK(parse("2^3^2").eval(p) == doctest::Approx(512.0));  // right-assoc
  CHECK(parse("2 - 3 - 4").eval(p) == doctest::Approx(-5.0));  // left-assoc
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse("min(1, r"), ParseError);
  try {
    parse("min(1, r");
  } catch (const ParseError& e) {
    CHECK(e.pos == 8);  // end of input, missing ')'
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 +"), ParseError);
  CHECK_THROWS_AS(parse("foo(1)"), ParseError);
  CHECK_THROWS_AS(parse("x3"), ParseError);
  CHECK_THROWS_AS(parse("1 2"), ParseError);
  CHECK_THROWS_AS(parse("(1"), ParseError);
}

TEST_CASE("evaluation domain faults") {
  Env p = Env::with_t(0.0);
  CHECK_THROWS_AS(parse("log(t)").eval(p), EvalError);
  CHECK_THROWS_AS(parse("1 / t").eval(p), EvalError);
  CHECK_THROWS_AS(parse("sqrt(0 - 1)").eval(p), EvalError);
  CHECK(parse("log(exp(1))").eval(p) == doctest::Approx(1.0));
}

TEST_CASE("variables and dimension validity") {
  Expr e = parse("x2 + y1 * t");
  auto vars = e.variables();
  CHECK(vars.count("x2") == 1);
  CHECK(vars.count("y1") == 1);
  CHECK(vars.count("t") == 1);
  CHECK(vars.count("x1") == 0);
  CHECK(e.valid_for_dimension(2));
  CHECK_FALSE(e.valid_for_dimension(1));
  CHECK(parse("t - 1").valid_for_dimension(1));
  CHECK(parse("r + x1").valid_for_dimension(1));
}

TEST_CASE("t and r derive from coordinates") {
  Env p = Env::at_point({0.6, 0.8, 0, 0});
  CHECK(parse("t").eval(p) == doctest::Approx(1.0));
  CHECK(parse("r").eval(p) == doctest::Approx(1.0));
  Env p2 = Env::at_point({1, 1, 1, 1});
  CHECK(parse("t").eval(p2) == doctest::Approx(4.0));
}

// str() must reparse to an equivalent tree: same value at random points.
TEST_CASE("round trip through str()") {
  const char* sources[] = {
      "2 - t",
      "max(t - 1, (x1 - 0.5)^2 + y1^2 + x2^2 + y2^2 - 1)",
      "x1^2 + y1^2 + 2*(x2^2 + y2^2) - 1",
      "min(1, max(x1, -y2)) * 3 - t / 2",
      "-(x1 + y1)^2 + abs(x2)",
      "sin(x1) * cos(y1) + exp(x2 / 4)",
      "1 + 2 * 3 ^ 2 - 4 / 8",
  };
  Rng rng(99);
  for (const char* src : sources) {
    Expr e = parse(src);
    Expr e2 = parse(e.str());
    for (int trial = 0; trial < 50; ++trial) {
      Env p = Env::at_point({rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(-1, 1), rng.uniform(-1, 1)});
      double a = e.eval(p), b = e2.eval(p);
      CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
  }
}

TEST_CASE("whitespace and comments in numbers") {
  CHECK(parse("  1.5e1 ").eval(Env::with_t(0)) == doctest::Approx(15.0));
  CHECK(parse("0.125").eval(Env::with_t(0)) == doctest::Approx(0.125));
  CHECK(parse(".5 + .25").eval(Env::with_t(0)) == doctest::Approx(0.75));
}

#include <doctest.h>

#include <cmath>

#include "gq/expr.hpp"
#include "gq/sampling.hpp"

using namespace gq;

namespace {

double fd(const Expr& e, std::vector<double> pt, std::size_t slot) {
  const double h = 1e-6;
  auto a = pt, b = pt;
  a[slot] += h;
  b[slot] -= h;
  return (evaluate_real(e, a) - evaluate_real(e, b)) / (2 * h);
}

}  // namespace

TEST_CASE("parse oscillator energy with a user constant") {
  const PhaseSpace space(1);
  const Expr h = parse("p^2/(2*m) + (1/2)*k*x^2", space, {"m", "k"});
  const double pt[2] = {1.0, 0.0};
  CHECK(evaluate_real(h, pt, {{"m", 1.0}, {"k", 1.0}}) == doctest::Approx(0.5));
  CHECK(parse("0", space).is_zero());
  const double q[2] = {2.0, 3.0};
  CHECK(evaluate_real(parse("x1*p1", space), q) == doctest::Approx(6.0));
  CHECK(evaluate_real(exp(Expr(0.0)), q) == 1.0);
}

TEST_CASE("print and parse reach a fixpoint") {
  const PhaseSpace space(2);
  for (const char* src : {"x1*p2 - 3*x2^2", "exp(-(x1^2+p1^2)/2)", "sin(x1)*cos(p2) + log(1 + x2^2)",
                          "sqrt(1 + p1^2)", "(x1 + i*p1)^3"}) {
    const Expr e = parse(src, space);
    const Expr back = parse(e.str(), space);
    CHECK(back.str() == e.str());
    for (const auto& pt : sample_points(4, 10, 5)) {
      CHECK(std::abs(evaluate(e, pt) - evaluate(back, pt)) < 1e-12 * (1 + std::abs(evaluate(e, pt))));
    }
  }
}

TEST_CASE("derivatives agree with finite differences") {
  const PhaseSpace space(1, 1.0);
  const Expr g = parse("exp(-(x^2+p^2)/(2*hbar))", space, {"hbar"});
  const Expr dg = differentiate(g, Coordinate::x(0));
  const Bindings hb{{"hbar", 1.0}};
  for (const auto& pt : sample_points(2, 20, 9)) {
    const double want = -pt[0] * std::exp(-(pt[0] * pt[0] + pt[1] * pt[1]) / 2);
    CHECK(evaluate_real(dg, pt, hb) == doctest::Approx(want).epsilon(1e-12));
  }
  const Expr x = Expr::x(0), p = Expr::p(0);
  CHECK(differentiate(x * x, Coordinate::x(0)).str() == (Expr(2.0) * x).str());
  const Expr e = sin(x * p) + pow(x, 3) * exp(p) / (Expr(1.0) + p * p);
  for (const auto& pt : sample_points(2, 20, 4)) {
    CHECK(evaluate_real(differentiate(e, Coordinate::x(0)), pt) == doctest::Approx(fd(e, pt, 0)).epsilon(1e-6));
    CHECK(evaluate_real(differentiate(e, Coordinate::p(0)), pt) == doctest::Approx(fd(e, pt, 1)).epsilon(1e-6));
  }
}

TEST_CASE("parse errors carry offsets") {
  const PhaseSpace space(1);
  try {
    parse("x1 + * p1", space);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
    CHECK(e.kind() == ParseError::Kind::Syntax);
  }
  CHECK_THROWS_AS(parse("x2", space), ParseError);
  CHECK_THROWS_AS(parse("foo + 1", space), ParseError);
  CHECK_THROWS_AS(parse("(x1", space), ParseError);
}

TEST_CASE("evaluation errors") {
  const PhaseSpace space(1);
  const Expr e = parse("k*x", space, {"k"});
  const double pt[2] = {1.0, 2.0};
  CHECK_THROWS_AS(evaluate(e, pt), EvalError);
  CHECK_THROWS_AS(evaluate_real(Expr::imaginary_unit(), pt), EvalError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "gq/checks.hpp"
#include "gq/prequant.hpp"
#include "gq/sampling.hpp"

using namespace gq;

namespace {

const Complex kI(0.0, 1.0);

double max_abs(const Expr& e, int dim, const Bindings& b = {}) {
  double m = 0;
  for (const auto& pt : sample_points(dim, 60, 31)) m = std::max(m, std::abs(evaluate(e, pt, b)));
  return m;
}

Expr hermite_function(int k, const Expr& x) {
  Expr h0(1.0), h1 = Expr(2.0) * x;
  Expr hk = k == 0 ? h0 : h1;
  for (int j = 1; j < k; ++j) {
    const Expr next = Expr(2.0) * x * h1 - Expr(2.0 * j) * h0;
    h0 = h1;
    h1 = next;
    hk = next;
  }
  const double norm = 1.0 / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0) * std::sqrt(M_PI));
  return Expr(norm) * hk * exp(Expr(-0.5) * x * x);
}

}  // namespace

TEST_CASE("one-forms") {
  const PhaseSpace s1(1), s2(2);
  CHECK(parse_one_form("theta", s1).label == "theta");
  CHECK(parse_one_form("theta-tilde", s2).components.size() == 4);
  const auto f = parse_one_form("2*p1 dx1", s1);
  CHECK(max_abs(f.components[0] - Expr(2.0) * Expr::p(0), 2) == 0.0);
  CHECK(f.components[1].is_zero());
  const auto g = parse_one_form("p1*dx1 - x2 dp2", s2);
  CHECK(max_abs(g.components[3] + Expr::x(1), 4) == 0.0);
  CHECK(parse_one_form("-dp", s1).components[1].as_constant() == Complex(-1.0));
  CHECK_THROWS_AS(parse_one_form("p1 dq1", s1), ParseError);
  CHECK_THROWS_AS(parse_one_form("dx3", s2), ParseError);
  CHECK(exactness_residual(ConnectionForm::theta(2), s2) < 1e-14);
  CHECK(exactness_residual(ConnectionForm::theta_tilde(2), s2) < 1e-14);
  CHECK(exactness_residual(f, s1) > 0.1);
}

TEST_CASE("covariant derivative") {
  const auto theta = ConnectionForm::theta(1);
  const auto dx = VectorField::coordinate(1, Coordinate::x(0));
  const auto dp = VectorField::coordinate(1, Coordinate::p(0));
  std::mt19937_64 rng(8);
  const Expr s = random_section(rng, 1, 3);
  CHECK(max_abs(covariant_derivative(theta, dp, s, 1.0) - differentiate(s, Coordinate::p(0)), 2) < 1e-13);
  CHECK(max_abs(covariant_derivative(theta, dx, Expr(1.0), 2.0) + Expr(kI / 2.0) * Expr::p(0), 2) < 1e-15);
  const Expr f = random_polynomial(rng, 1, 3);
  const VectorField x = random_vector_field(rng, 1, 2);
  const Expr lhs = covariant_derivative(theta, x, f * s, 1.0);
  const Expr rhs = x.apply(f) * s + f * covariant_derivative(theta, x, s, 1.0);
  CHECK(max_abs(lhs - rhs, 2) < 1e-10);
}

TEST_CASE("curvature") {
  const auto theta = ConnectionForm::theta(1);
  const auto dx = VectorField::coordinate(1, Coordinate::x(0));
  const auto dp = VectorField::coordinate(1, Coordinate::p(0));
  CHECK(max_abs(curvature_residual(theta, dx, dp, Expr(1.0), 1.0), 2) < 1e-15);
  CHECK(max_abs(curvature_residual(theta, dx, dx, Expr(1.0), 1.0), 2) < 1e-15);
  const Expr comm = covariant_derivative(theta, dx, covariant_derivative(theta, dp, Expr(1.0), 1.0), 1.0) -
                    covariant_derivative(theta, dp, covariant_derivative(theta, dx, Expr(1.0), 1.0), 1.0);
  // [d_x, d_p] s = (i/hbar) s for theta = p dx.
  CHECK(max_abs(comm - Expr(kI), 2) < 1e-15);
}

TEST_CASE("prequantum operators") {
  const PhaseSpace s(1);
  const Expr x = Expr::x(0), p = Expr::p(0);
  std::mt19937_64 rng(5);
  const Expr sec = random_section(rng, 1, 3);
  const PrequantumOperator one(Expr(1.0), ConnectionForm::theta(1), s);
  CHECK(max_abs(one(sec) - sec, 2) < 1e-14);

  const PrequantumOperator qx(x, ConnectionForm::theta(1), s);
  CHECK(max_abs(qx(sec) - (x * sec + Expr(kI) * differentiate(sec, Coordinate::p(0))), 2) < 1e-13);

  const Expr h = Expr(0.5) * (p * p + x * x);
  const PrequantumOperator qh(h, ConnectionForm::theta_tilde(1), s);
  const Expr want = Expr(-kI) * (p * differentiate(sec, Coordinate::x(0)) - x * differentiate(sec, Coordinate::p(0)));
  CHECK(max_abs(qh(sec) - want, 2) < 1e-12);
}

TEST_CASE("gauge covariance between theta and theta-tilde") {
  const PhaseSpace s(1, 0.7);
  const Expr x = Expr::x(0), p = Expr::p(0);
  const Expr u = exp(Expr(Complex(0.0, -1.0 / (2.0 * 0.7))) * x * p);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const Expr f = random_polynomial(rng, 1, 3);
    const Expr sec = random_section(rng, 1, 2);
    const PrequantumOperator a(f, ConnectionForm::theta(1), s);
    const PrequantumOperator b(f, ConnectionForm::theta_tilde(1), s);
    CHECK(max_abs(b(u * sec) - u * a(sec), 2) < 1e-10);
  }
}

TEST_CASE("commutator") {
  const PhaseSpace s(1);
  std::mt19937_64 rng(2);
  const Expr sec = random_section(rng, 1, 2);
  const Expr f = random_polynomial(rng, 1, 3);
  CHECK(max_abs(commutator_residual(f, f, sec, ConnectionForm::theta(1), s), 2) < 1e-12);
  const Expr g = random_polynomial(rng, 1, 3);
  CHECK(max_abs(commutator_residual(f, g, sec, ConnectionForm::theta(1), s), 2) < 1e-8);
  const Expr x = Expr::x(0), p = Expr::p(0);
  CHECK(max_abs(commutator_residual(x, p, sec, ConnectionForm::theta(1), s), 2) < 1e-12);
  CHECK(max_abs(commutator_residual(x, p, sec, ConnectionForm::theta(1), s, CommutatorSign::PlusIOverHbar), 2) > 1e-3);
}

TEST_CASE("prequantum oscillator modes") {
  const auto modes = prequantum_ho_spectrum(5, 1.0);
  REQUIRE(modes.size() == 11);
  for (const auto& m : modes) {
    CHECK(m.eigenvalue == doctest::Approx(m.mode).epsilon(1e-12));
    CHECK(m.ratio_error < 1e-9);
  }
  const auto scaled = prequantum_ho_spectrum(5, 2.0);
  CHECK(scaled.back().mode == 5);
  CHECK(scaled.back().eigenvalue == doctest::Approx(10.0));
}

TEST_CASE("truncated matrices") {
  const PhaseSpace s(1);
  const Expr x = Expr::x(0), p = Expr::p(0);
  std::vector<LabeledSection> basis;
  for (int k = 0; k < 4; ++k) basis.push_back({"h" + std::to_string(k), hermite_function(k, x) * hermite_function(0, p)});
  QuadratureSpec spec;
  const auto g = gram_matrix(basis, s, spec);
  CHECK((g - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const auto id = assemble_matrix(PrequantumOperator(Expr(1.0), ConnectionForm::theta(1), s), basis, s, spec);
  CHECK((id.matrix - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);

  const auto qx = assemble_matrix(PrequantumOperator(x, ConnectionForm::theta(1), s), basis, s, spec);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      double want = 0.0;
      if (k == j + 1) want = std::sqrt(k / 2.0);
      if (j == k + 1) want = std::sqrt(j / 2.0);
      CHECK(std::abs(qx.matrix(j, k) - want) < 1e-10);
    }
  }
  CHECK(hermiticity_defect(qx) < 1e-10);
  const auto ev = eigenvalues(qx);
  CHECK(ev.front().real() < ev.back().real());
  const std::string js = to_json(qx);
  CHECK(js.find("\"basis_labels\"") != std::string::npos);
  CHECK(js.find("\"matrix_re\"") != std::string::npos);

  std::vector<LabeledSection> skew = basis;
  skew[1].section = skew[1].section + skew[0].section;
  CHECK_THROWS(assemble_matrix(PrequantumOperator(x, ConnectionForm::theta(1), s), skew, s, spec));
}

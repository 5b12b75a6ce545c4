#include <doctest.h>

#include <cmath>

#include "gq/quadrature.hpp"

using namespace gq;

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
  const auto r = gauss_hermite(20);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double x = r.nodes[i];
    m0 += r.weights[i];
    m2 += r.weights[i] * x * x;
    m4 += r.weights[i] * x * x * x * x;
  }
  CHECK(m0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(3 * std::sqrt(M_PI) / 4).epsilon(1e-13));
}

TEST_CASE("tensor Gauss-Hermite in two dimensions") {
  QuadratureSpec spec;
  spec.nodes = 32;
  spec.scale = 1.0;
  const auto v = integrate_gaussian(
      [](std::span<const double> x) {
        return std::exp(-x[0] * x[0] - x[1] * x[1]) * (1 + x[0] * x[0]) * std::pow(x[1], 4);
      },
      2, spec);
  CHECK(v.real() == doctest::Approx(1.5 * 0.75 * M_PI).epsilon(1e-12));
  spec.scale = std::sqrt(0.5);
  const auto w = integrate_gaussian([](std::span<const double> x) { return std::exp(-2 * x[0] * x[0]); }, 1, spec);
  CHECK(w.real() == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-12));
}

TEST_CASE("adaptive integration and divergence reporting") {
  const auto r = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, -50, 50);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2 * std::atan(50.0)).epsilon(1e-10));
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));
  const auto bad = integrate_adaptive([](double x) { return 1.0 / x; }, 0, 1, 1e-10, 1e-14, 20);
  CHECK((!bad.converged || bad.max_abs_integrand > 1e12));
}

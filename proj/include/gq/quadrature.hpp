#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace gq {

/// Gauss-Hermite rule for the weight exp(-u^2) on the real line.
/// `scaled_weights[i] = weights[i] * exp(nodes[i]^2)` integrates an arbitrary
/// Gaussian-decaying function: int f(u) du ~= sum scaled_weights[i] f(nodes[i]).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Nodes in ascending order. Computed by Newton iteration on the normalized
/// Hermite recurrence; exact for polynomials of degree <= 2n-1 times exp(-u^2).
GaussHermiteRule gauss_hermite(int n);

/// How Gaussian-dominated integrals over R^d are discretized: each axis uses
/// `nodes` Gauss-Hermite points, stretched by `scale` (x = scale * u), so an
/// integrand decaying like exp(-x^2 / scale^2) is handled exactly up to the
/// rule's polynomial degree.
struct QuadratureSpec {
  int nodes = 64;
  double scale = 1.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  /// Largest |f| seen on the finest panels; used by divergence heuristics.
  double max_abs_integrand = 0.0;
  int max_depth_reached = 0;
};

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b]. The integrand is never
/// evaluated at the end points, so integrable end-point singularities are fine.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 30);

/// Tensor Gauss-Hermite approximation of int_{R^dim} f(x) dx with the given
/// spec. Summation order is fixed (last axis fastest), so results are
/// reproducible bit for bit.
std::complex<double> integrate_gaussian(const std::function<std::complex<double>(std::span<const double>)>& f, int dim,
                                        const QuadratureSpec& spec);

}  // namespace gq

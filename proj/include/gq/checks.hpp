#pragma once

// Randomized property suites over the symbolic layer. Every suite is driven
// by a seeded mt19937_64, so a fixed seed gives a byte-identical report.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gq/expr.hpp"
#include "gq/mech.hpp"
#include "gq/prequant.hpp"

namespace gq {

/// Random polynomial in x1..xn, p1..pn: up to `max_terms` monomials of total
/// degree <= max_degree with integer coefficients in [-3, 3] \ {0}.
Expr random_polynomial(std::mt19937_64& rng, int dof, int max_degree, int max_terms = 4);
/// Polynomial with a complex coefficient mix, used as a test section.
Expr random_section(std::mt19937_64& rng, int dof, int max_degree);
VectorField random_vector_field(std::mt19937_64& rng, int dof, int max_degree);

/// |value| / (1 + sum |terms|).
double relative_residual(Complex value, std::initializer_list<Complex> terms);

struct CheckItem {
  std::string name;
  /// Largest relative residual seen (smallest, for negative controls).
  double residual = 0.0;
  double threshold = 0.0;
  int cases = 0;
  /// A negative control passes when its residual stays above the threshold.
  bool negative_control = false;
  bool passed = false;
};

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckItem> items;

  bool passed() const;
  std::string to_json() const;
  std::string to_csv() const;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  double hbar = 1.0;
  /// Cases per identity; 0 selects the suite default.
  int cases = 0;
  /// Sample points per case; 0 selects the suite default.
  int points = 0;
  /// Connection form for the curvature and commutator suites (both presets when unset).
  std::optional<std::string> theta;
  /// Degrees of freedom; 0 draws n in 1..3 per case.
  int dof = 0;
};

CheckReport check_poisson(const CheckOptions& options);
CheckReport check_curvature(const CheckOptions& options);
CheckReport check_commutator(const CheckOptions& options);
CheckReport check_liouville(const CheckOptions& options);
CheckReport check_polarization(const CheckOptions& options);

std::vector<std::string> suite_names();
/// Dispatches by name; throws std::invalid_argument for an unknown suite.
CheckReport run_check(std::string_view suite, const CheckOptions& options);

}  // namespace gq

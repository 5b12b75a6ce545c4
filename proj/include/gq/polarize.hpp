#pragma once

// Polarized sections and the Hilbert spaces built from them.
//
// Complex coordinates are z_j = x^j - i p_j with
// d/dz_j = (d/dx^j + i d/dp_j)/2 and d/dzbar_j = (d/dx^j - i d/dp_j)/2.
// Holomorphic functions F(z) are written as Exprs in x1..xn standing for
// z1..zn; compose_z turns them into functions on phase space.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gq/expr.hpp"
#include "gq/mech.hpp"
#include "gq/prequant.hpp"
#include "gq/quadrature.hpp"

namespace gq {

enum class Polarization { Position, Momentum, Holomorphic };
enum class Gauge { Theta, ThetaTilde };

std::string to_string(Polarization p);
std::string to_string(Gauge g);
ConnectionForm connection_for(Gauge g, int dof);

/// z_j = x^j - i p_j and its conjugate.
Expr z_coordinate(int j);
Expr zbar_coordinate(int j);
/// d/dzbar_j and d/dz_j as complex vector fields.
VectorField dzbar_field(int dof, int j);
VectorField dz_field(int dof, int j);
/// F(x1..xn) |-> F(z1..zn).
Expr compose_z(const Expr& f, int dof);

/// max over j and samples of |nabla_{V_j} phi| / (1 + |phi|), where V_j is
/// d/dp_j (pos), d/dx^j (mom) or d/dzbar_j (hol).
double membership_residual(const Expr& phi, Polarization which, const ConnectionForm& theta, const PhaseSpace& space,
                           int samples = 100, std::uint64_t seed = 11);
constexpr double kMembershipTolerance = 1e-8;

// Distributions -----------------------------------------------------------

struct Distribution {
  std::string name;
  std::vector<VectorField> generators;
  bool complex = false;

  static Distribution vertical(int dof);
  static Distribution horizontal(int dof);
  /// span{d/dz_1..d/dz_n}.
  static Distribution holomorphic(int dof);
  /// span{d/dx1, x1 d/dp1 + d/dp2} on T*R^2; not involutive.
  static Distribution non_involutive_example();
};

struct PolarizationReport {
  bool involutive = false;
  bool lagrangian = false;
  bool const_intersection = false;
  /// dim(D cap Dbar) at the first sample.
  int intersection_dim = 0;
  double involutivity_residual = 0.0;
  double isotropy_residual = 0.0;
};

class RankDeficiency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PolarizationReport polarization_check(const Distribution& d, const PhaseSpace& space, int samples = 100,
                                      std::uint64_t seed = 13);

enum class LeafPreset { Vertical, Horizontal, Radial };
/// x for vertical leaves of T*R, p for horizontal leaves, x^2 + p^2 for the
/// circles of the radial foliation (throws std::domain_error at the origin).
double leaf_projection(LeafPreset preset, double x, double p);

// Segal-Bargmann space (n = 1) ----------------------------------------------

/// psi_k = z^k e^{-|z|^2/4hbar} (theta~) or z^k e^{-z^2/4hbar} e^{-p^2/2hbar} (theta).
Expr bargmann_basis_element(int k, double hbar, Gauge gauge);
std::vector<LabeledSection> bargmann_basis(int k_max, double hbar, Gauge gauge);
/// Quadrature suited to the Gaussian factor of the basis.
QuadratureSpec bargmann_quadrature(double hbar);

/// G_kl = <psi_k, psi_l> for k, l <= K (K <= 40).
Eigen::MatrixXcd bargmann_gram(int k_max, double hbar, Gauge gauge);

/// hbar * sum_j z_j dF/dz_j for F written in x1..xn as z1..zn.
Expr bargmann_ho_apply(const Expr& f, double hbar, int dof = 1);

struct CrossCheck {
  TruncatedOperator matrix;
  std::vector<std::complex<double>> eigenvalues;
  double discrepancy = 0.0;
};

/// Q(H) assembled on the Gram-normalized theta~-gauge basis psi_0..psi_K and
/// compared with diag(k hbar).
CrossCheck bargmann_vs_prequant_crosscheck(int k_max, double hbar);

// Half-forms on the vertical polarization ------------------------------------

struct HalfFormSection {
  Expr section;      // s(x)
  Expr coefficient;  // f(x), standing for f sqrt(dx1 ^ ... ^ dxn)
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// int conj(s_a f_a) s_b f_b dx over R^n by Gauss-Hermite. Throws
/// std::invalid_argument if an input depends on p and DivergenceError if the
/// integrand's tail grows.
Complex halfform_inner_product(const HalfFormSection& a, const HalfFormSection& b, const PhaseSpace& space,
                               const QuadratureSpec& spec = {});

/// True iff alpha = f dx1 ^ ... ^ dxn is polarized along the vertical
/// distribution, i.e. every d f / d p_j vanishes at the samples.
bool polarized_kp_check(const Expr& f, const PhaseSpace& space, int samples = 100, std::uint64_t seed = 17);

/// Integrals of g over [-R, R] for R = 10, 20, 40 and whether they grow by more
/// than 1.5x per doubling.
struct TailGrowth {
  std::vector<double> partial;
  bool divergent = false;
};
TailGrowth tail_growth(const std::function<double(double)>& g);

/// The integral of |phi|^2 over [-R, R]^2 for a p-independent section phi(x)
/// (n = 1), tested for growth in R.
TailGrowth naive_position_norm(const Expr& phi);

}  // namespace gq

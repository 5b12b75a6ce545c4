#pragma once

// Classical Hamiltonian mechanics on T*R^n.
//
// Sign conventions (all verified in the test suite):
//   {f, g} = sum_j (df/dx^j dg/dp_j - dg/dx^j df/dp_j)
//   X_f    = (df/dp_1..df/dp_n, -df/dx^1..-df/dx^n)   (Hamilton's equations)
//   Omega  = sum_j dp_j ^ dx^j, so Omega(X, Y) = sum_j X_pj Y_xj - X_xj Y_pj
// With these, iota_{X_f} Omega = -df, X_f(g) = {g, f} and
// [X_f, X_g] = X_{{g, f}} = -X_{{f, g}}.

#include <span>
#include <string>
#include <vector>

#include "gq/expr.hpp"

namespace gq {

/// Vector field sum_k c_k d/dq^k with components ordered (x1..xn, p1..pn).
/// Components may be complex-valued.
class VectorField {
 public:
  VectorField(int dof, std::vector<Expr> components);
  static VectorField zero(int dof) { return VectorField(dof, std::vector<Expr>(static_cast<std::size_t>(2 * dof))); }
  /// The coordinate field d/dq for a single coordinate.
  static VectorField coordinate(int dof, Coordinate c);

  int dof() const { return dof_; }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& operator[](std::size_t k) const { return components_[k]; }
  const Expr& x_component(int j) const { return components_[static_cast<std::size_t>(j)]; }
  const Expr& p_component(int j) const { return components_[static_cast<std::size_t>(dof_ + j)]; }

  /// Directional derivative X(f).
  Expr apply(const Expr& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& f, const VectorField& v);

 private:
  int dof_;
  std::vector<Expr> components_;
};

std::string to_string(const VectorField& v);

Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSpace& space);
VectorField hamiltonian_vector_field(const Expr& f, const PhaseSpace& space);
/// [X, Y]_k = X(Y_k) - Y(X_k).
VectorField lie_bracket(const VectorField& x, const VectorField& y);
/// Omega(X, Y) = sum_j X_pj Y_xj - X_xj Y_pj (complex-bilinear).
Expr symplectic_pairing(const VectorField& x, const VectorField& y);
/// sum_k d(X_k)/dq^k.
Expr divergence(const VectorField& x);
/// div X_f; vanishes identically (Liouville).
Expr liouville_divergence(const Expr& f, const PhaseSpace& space);
/// df/dt along solutions of H: the bracket {f, H}.
Expr check_conserved(const Expr& f, const Expr& hamiltonian, const PhaseSpace& space);

// Flows ------------------------------------------------------------------

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::string integrator = "implicit-midpoint";
  double step = 0.0;
  std::string hamiltonian;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

/// Implicit midpoint integration of Hamilton's equations from t = 0 to t_end
/// with fixed step dt; the last step is shortened to land on t_end.
Trajectory flow(const Expr& hamiltonian, const PhaseSpace& space, std::span<const double> state0, double t_end,
                double dt, const FlowOptions& options = {});

/// One implicit-midpoint step; exposed for the volume-preservation check.
std::vector<double> midpoint_step(const std::vector<Expr>& gradient, const PhaseSpace& space,
                                  std::span<const double> state, double dt, const FlowOptions& options = {});

/// (dH/dx1..dH/dxn, dH/dp1..dH/dpn).
std::vector<Expr> gradient(const Expr& f, const PhaseSpace& space);

/// max_t |H(gamma(t)) - H(gamma(0))|.
double max_energy_drift(const Trajectory& traj, const Expr& hamiltonian, const PhaseSpace& space);

std::string trajectory_csv(const Trajectory& traj, const PhaseSpace& space);
std::string trajectory_json(const Trajectory& traj, const PhaseSpace& space);

// Travel time --------------------------------------------------------------

struct TravelTime {
  enum class Status { Finite, Divergent };
  Status status = Status::Finite;
  double time = 0.0;
};

/// t = int_{x0}^{x1} sqrt(m / (2 (E0 - V(y)))) dy for a potential V in x1 (n = 1).
/// Throws std::domain_error when E0 <= V somewhere strictly inside the path.
TravelTime travel_time(const Expr& potential, double energy, double x0, double x1, double mass,
                       const Bindings& params = {});

}  // namespace gq

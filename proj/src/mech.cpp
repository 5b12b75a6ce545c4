#include "gq/mech.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gq/quadrature.hpp"

namespace gq {

VectorField::VectorField(int dof, std::vector<Expr> components) : dof_(dof), components_(std::move(components)) {
  if (dof < 1 || components_.size() != static_cast<std::size_t>(2 * dof)) {
    throw std::invalid_argument("vector field needs exactly 2n components");
  }
}

VectorField VectorField::coordinate(int dof, Coordinate c) {
  std::vector<Expr> comps(static_cast<std::size_t>(2 * dof));
  comps[static_cast<std::size_t>(c.slot(dof))] = Expr(1.0);
  return VectorField(dof, std::move(comps));
}

Expr VectorField::apply(const Expr& f) const {
  std::vector<Expr> terms;
  for (int k = 0; k < 2 * dof_; ++k) {
    const Expr& c = components_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const Coordinate q = k < dof_ ? Coordinate::x(k) : Coordinate::p(k - dof_);
    Expr d = differentiate(f, q);
    if (!d.is_zero()) terms.push_back(c * d);
  }
  return sum(std::move(terms));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.dof_ != b.dof_) throw std::invalid_argument("vector field dimension mismatch");
  std::vector<Expr> c(a.components_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.components_[k] + b.components_[k];
  return VectorField(a.dof_, std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + Expr(-1.0) * b; }

VectorField operator*(const Expr& f, const VectorField& v) {
  std::vector<Expr> c(v.components_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = f * v.components_[k];
  return VectorField(v.dof_, std::move(c));
}

std::string to_string(const VectorField& v) {
  std::string out;
  for (int k = 0; k < 2 * v.dof(); ++k) {
    const Expr& c = v[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const Coordinate q = k < v.dof() ? Coordinate::x(k) : Coordinate::p(k - v.dof());
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*d/d" + q.name();
  }
  return out.empty() ? "0" : out;
}

Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSpace& space) {
  std::vector<Expr> terms;
  for (int j = 0; j < space.dof(); ++j) {
    const Coordinate x = Coordinate::x(j);
    const Coordinate p = Coordinate::p(j);
    terms.push_back(differentiate(f, x) * differentiate(g, p));
    terms.push_back(-(differentiate(g, x) * differentiate(f, p)));
  }
  return sum(std::move(terms));
}

std::vector<Expr> gradient(const Expr& f, const PhaseSpace& space) {
  std::vector<Expr> g;
  for (const Coordinate& c : space.coordinates()) g.push_back(differentiate(f, c));
  return g;
}

VectorField hamiltonian_vector_field(const Expr& f, const PhaseSpace& space) {
  const int n = space.dof();
  std::vector<Expr> comps(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    comps[static_cast<std::size_t>(j)] = differentiate(f, Coordinate::p(j));
    comps[static_cast<std::size_t>(n + j)] = -differentiate(f, Coordinate::x(j));
  }
  return VectorField(n, std::move(comps));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.dof() != y.dof()) throw std::invalid_argument("vector field dimension mismatch");
  std::vector<Expr> comps(x.components().size());
  for (std::size_t k = 0; k < comps.size(); ++k) comps[k] = x.apply(y[k]) - y.apply(x[k]);
  return VectorField(x.dof(), std::move(comps));
}

Expr symplectic_pairing(const VectorField& x, const VectorField& y) {
  if (x.dof() != y.dof()) throw std::invalid_argument("vector field dimension mismatch");
  std::vector<Expr> terms;
  for (int j = 0; j < x.dof(); ++j) {
    terms.push_back(x.p_component(j) * y.x_component(j));
    terms.push_back(-(x.x_component(j) * y.p_component(j)));
  }
  return sum(std::move(terms));
}

Expr divergence(const VectorField& x) {
  std::vector<Expr> terms;
  for (int k = 0; k < 2 * x.dof(); ++k) {
    const Coordinate q = k < x.dof() ? Coordinate::x(k) : Coordinate::p(k - x.dof());
    terms.push_back(differentiate(x[static_cast<std::size_t>(k)], q));
  }
  return sum(std::move(terms));
}

Expr liouville_divergence(const Expr& f, const PhaseSpace& space) {
  return divergence(hamiltonian_vector_field(f, space));
}

Expr check_conserved(const Expr& f, const Expr& hamiltonian, const PhaseSpace& space) {
  return poisson_bracket(f, hamiltonian, space);
}

// Flows ------------------------------------------------------------------

namespace {

void hamilton_rhs(const std::vector<Expr>& grad, const PhaseSpace& space, std::span<const double> z,
                  std::vector<double>& out) {
  const int n = space.dof();
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = evaluate_real(grad[static_cast<std::size_t>(n + j)], z, space.bindings());
    out[static_cast<std::size_t>(n + j)] = -evaluate_real(grad[static_cast<std::size_t>(j)], z, space.bindings());
  }
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> midpoint_step(const std::vector<Expr>& grad, const PhaseSpace& space,
                                  std::span<const double> state, double dt, const FlowOptions& options) {
  const std::size_t dim = state.size();
  std::vector<double> rhs(dim);
  std::vector<double> mid(dim);
  std::vector<double> next(state.begin(), state.end());
  hamilton_rhs(grad, space, state, rhs);
  for (std::size_t k = 0; k < dim; ++k) next[k] = state[k] + dt * rhs[k];
  for (int it = 0; it < options.max_iterations; ++it) {
    for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (state[k] + next[k]);
    hamilton_rhs(grad, space, mid, rhs);
    double delta = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double v = state[k] + dt * rhs[k];
      delta = std::max(delta, std::abs(v - next[k]));
      next[k] = v;
    }
    for (double v : next) {
      if (!std::isfinite(v)) throw IntegrationError("implicit midpoint produced a non-finite state");
    }
    if (delta <= options.tolerance * (1.0 + max_norm(next))) return next;
  }
  throw IntegrationError("implicit midpoint fixed-point iteration did not converge");
}

Trajectory flow(const Expr& hamiltonian, const PhaseSpace& space, std::span<const double> state0, double t_end,
                double dt, const FlowOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("flow: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("flow: t_end must be non-negative");
  if (state0.size() != static_cast<std::size_t>(space.dim())) throw std::invalid_argument("flow: state has wrong length");

  const std::vector<Expr> grad = gradient(hamiltonian, space);
  Trajectory traj;
  traj.step = dt;
  traj.hamiltonian = hamiltonian.str();
  traj.times.push_back(0.0);
  traj.states.emplace_back(state0.begin(), state0.end());

  const auto steps = static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-9));
  for (std::int64_t s = 1; s <= steps; ++s) {
    const double t = std::min(t_end, static_cast<double>(s) * dt);
    const double h = t - traj.times.back();
    if (h <= 0.0) break;
    traj.states.push_back(midpoint_step(grad, space, traj.states.back(), h, options));
    traj.times.push_back(t);
  }
  return traj;
}

double max_energy_drift(const Trajectory& traj, const Expr& hamiltonian, const PhaseSpace& space) {
  if (traj.states.empty()) return 0.0;
  const double e0 = evaluate_real(hamiltonian, traj.states.front(), space.bindings());
  double drift = 0.0;
  for (const auto& s : traj.states) drift = std::max(drift, std::abs(evaluate_real(hamiltonian, s, space.bindings()) - e0));
  return drift;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> columns(const PhaseSpace& space) {
  std::vector<std::string> cols{"t"};
  for (const Coordinate& c : space.coordinates()) cols.push_back(c.name());
  return cols;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, const PhaseSpace& space) {
  std::ostringstream os;
  const auto cols = columns(space);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << fmt(traj.times[i]);
    for (double v : traj.states[i]) os << ',' << fmt(v);
    os << '\n';
  }
  return os.str();
}

std::string trajectory_json(const Trajectory& traj, const PhaseSpace& space) {
  nlohmann::ordered_json j;
  j["integrator"] = traj.integrator;
  j["step"] = traj.step;
  j["hamiltonian"] = traj.hamiltonian;
  j["columns"] = columns(space);
  j["times"] = traj.times;
  j["states"] = traj.states;
  return j.dump();
}

// Travel time --------------------------------------------------------------

TravelTime travel_time(const Expr& potential, double energy, double x0, double x1, double mass,
                       const Bindings& params) {
  if (!(mass > 0.0)) throw std::invalid_argument("travel_time: mass must be positive");
  TravelTime out;
  if (x0 == x1) return out;
  const double length = x1 - x0;

  // y(u) = x0 + L (3u^2 - 2u^3) vanishes to second order at both ends, which
  // absorbs the inverse-square-root singularity of a simple turning point.
  auto integrand = [&](double u) {
    const double y = x0 + length * (3.0 * u * u - 2.0 * u * u * u);
    const double jac = 6.0 * length * u * (1.0 - u);
    const double point[2] = {y, 0.0};
    const double gap = energy - evaluate_real(potential, point, params);
    // A gap within rounding of zero is a turning point (reached with zero
    // speed); a clearly negative gap means the path is forbidden.
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(energy) + std::abs(energy - gap));
    if (gap < -tol) throw std::domain_error("travel_time: E0 < V(y) inside the path at y = " + std::to_string(y));
    if (gap <= tol) return std::numeric_limits<double>::infinity();
    return std::abs(jac) * std::sqrt(mass / (2.0 * gap));
  };

  const QuadratureResult r = integrate_adaptive(integrand, 0.0, 1.0, 1e-10, 1e-14, 30);
  if (!r.converged || !std::isfinite(r.value) || r.max_abs_integrand > 1e12) {
    out.status = TravelTime::Status::Divergent;
    out.time = std::numeric_limits<double>::infinity();
    return out;
  }
  out.time = r.value;
  return out;
}

}  // namespace gq

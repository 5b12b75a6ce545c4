#include "gq/prequant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gq/sampling.hpp"

namespace gq {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

ConnectionForm ConnectionForm::theta(int dof) {
  ConnectionForm t;
  t.dof = dof;
  t.label = "theta";
  t.components.resize(static_cast<std::size_t>(2 * dof));
  for (int j = 0; j < dof; ++j) t.components[static_cast<std::size_t>(j)] = Expr::p(j);
  return t;
}

ConnectionForm ConnectionForm::theta_tilde(int dof) {
  ConnectionForm t;
  t.dof = dof;
  t.label = "theta-tilde";
  t.components.resize(static_cast<std::size_t>(2 * dof));
  for (int j = 0; j < dof; ++j) {
    t.components[static_cast<std::size_t>(j)] = Expr(0.5) * Expr::p(j);
    t.components[static_cast<std::size_t>(dof + j)] = Expr(-0.5) * Expr::x(j);
  }
  return t;
}

Expr ConnectionForm::apply(const VectorField& x) const {
  if (x.dof() != dof) throw std::invalid_argument("connection form and vector field dimensions differ");
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < components.size(); ++k) terms.push_back(components[k] * x[k]);
  return sum(std::move(terms));
}

std::string ConnectionForm::str() const {
  std::string out;
  for (int k = 0; k < 2 * dof; ++k) {
    const Expr& c = components[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const Coordinate q = k < dof ? Coordinate::x(k) : Coordinate::p(k - dof);
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ") d" + q.name();
  }
  return out.empty() ? "0" : out;
}

double exactness_residual(const ConnectionForm& theta, const PhaseSpace& space, int samples, std::uint64_t seed) {
  const int dim = space.dim();
  if (static_cast<int>(theta.components.size()) != dim) throw std::invalid_argument("connection form has wrong length");
  // D[a][b] = d_a theta_b - d_b theta_a, compared with Omega(e_a, e_b).
  std::vector<std::vector<Expr>> d(static_cast<std::size_t>(dim), std::vector<Expr>(static_cast<std::size_t>(dim)));
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      d[a][b] = differentiate(theta.components[b], space.coordinate(a)) -
                differentiate(theta.components[a], space.coordinate(b));
    }
  }
  const int n = space.dof();
  auto omega = [n](int a, int b) {
    if (a >= n && b == a - n) return 1.0;
    if (a < n && b == a + n) return -1.0;
    return 0.0;
  };
  double worst = 0.0;
  for (const auto& pt : sample_points(dim, samples, seed)) {
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        worst = std::max(worst, std::abs(evaluate(d[a][b], pt, space.bindings()) - omega(a, b)));
      }
    }
  }
  return worst;
}

Expr covariant_derivative(const ConnectionForm& theta, const VectorField& x, const Expr& s, double hbar) {
  return x.apply(s) - Expr(kI / hbar) * theta.apply(x) * s;
}

Expr curvature_residual(const ConnectionForm& theta, const VectorField& x, const VectorField& y, const Expr& s,
                        double hbar) {
  const Expr xy = covariant_derivative(theta, x, covariant_derivative(theta, y, s, hbar), hbar);
  const Expr yx = covariant_derivative(theta, y, covariant_derivative(theta, x, s, hbar), hbar);
  const Expr bracket = covariant_derivative(theta, lie_bracket(x, y), s, hbar);
  return xy - yx - bracket + Expr(kI / hbar) * symplectic_pairing(x, y) * s;
}

PrequantumOperator::PrequantumOperator(Expr f, ConnectionForm theta, const PhaseSpace& space)
    : f_(std::move(f)), theta_(std::move(theta)), hbar_(space.hbar()),
      field_(hamiltonian_vector_field(f_, space)) {}

Expr PrequantumOperator::apply(const Expr& s) const {
  return Expr(-kI * hbar_) * covariant_derivative(theta_, field_, s, hbar_) + f_ * s;
}

Expr commutator_residual(const Expr& f, const Expr& g, const Expr& s, const ConnectionForm& theta,
                         const PhaseSpace& space, CommutatorSign sign) {
  const PrequantumOperator qf(f, theta, space);
  const PrequantumOperator qg(g, theta, space);
  const PrequantumOperator qfg(poisson_bracket(f, g, space), theta, space);
  const double sgn = sign == CommutatorSign::MinusIOverHbar ? -1.0 : 1.0;
  const Expr comm = qf(qg(s)) - qg(qf(s));
  return Expr(sgn * kI / space.hbar()) * comm - qfg(s);
}

Expr angular_mode(int n) {
  const Expr x = Expr::x(0);
  const Expr p = Expr::p(0);
  const Expr r2 = x * x + p * p;
  const Expr profile = exp(Expr(-0.25) * r2);
  if (n == 0) return profile;
  const int k = std::abs(n);
  const Expr w = n > 0 ? x - Expr(kI) * p : x + Expr(kI) * p;
  return pow(w, k) * pow(r2, Rational::make(-k, 2)) * profile;
}

std::vector<ModeEigenvalue> prequantum_ho_spectrum(int n_modes, double hbar, int samples, std::uint64_t seed) {
  if (n_modes < 1) throw std::invalid_argument("prequantum_ho_spectrum: need at least one mode");
  const PhaseSpace space(1, hbar);
  const Expr h = Expr(0.5) * (Expr::x(0) * Expr::x(0) + Expr::p(0) * Expr::p(0));
  const PrequantumOperator q(h, ConnectionForm::theta_tilde(1), space);
  const auto pts = sample_points(2, samples, seed);
  std::vector<ModeEigenvalue> out;
  for (int n = -n_modes; n <= n_modes; ++n) {
    const Expr psi = angular_mode(n);
    const Expr qpsi = q(psi);
    ModeEigenvalue m;
    m.mode = n;
    Complex mean = 0.0;
    for (const auto& pt : pts) {
      const Complex ratio = evaluate(qpsi, pt) / evaluate(psi, pt);
      m.ratio_error = std::max(m.ratio_error, std::abs(ratio - Complex(n * hbar)));
      mean += ratio;
    }
    m.eigenvalue = (mean / static_cast<double>(pts.size())).real();
    out.push_back(m);
  }
  return out;
}

namespace {

// Values of each section at every tensor node, in the node order used by
// integrate_gaussian.
struct NodeTable {
  std::vector<double> weights;
  std::vector<std::vector<Complex>> values;  // [section][node]
};

NodeTable tabulate(const std::vector<Expr>& sections, const PhaseSpace& space, const QuadratureSpec& spec) {
  const GaussHermiteRule rule = gauss_hermite(spec.nodes);
  const int dim = space.dim();
  const auto n = static_cast<std::size_t>(spec.nodes);
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  NodeTable t;
  t.weights.resize(total);
  t.values.assign(sections.size(), std::vector<Complex>(total));
  std::vector<double> point(static_cast<std::size_t>(dim));
  for (std::size_t node = 0; node < total; ++node) {
    std::size_t rest = node;
    double w = 1.0;
    for (int a = dim - 1; a >= 0; --a) {
      const std::size_t i = rest % n;
      rest /= n;
      point[static_cast<std::size_t>(a)] = spec.scale * rule.nodes[i];
      w *= spec.scale * rule.scaled_weights[i];
    }
    t.weights[node] = w;
    for (std::size_t s = 0; s < sections.size(); ++s) {
      const Complex v = evaluate(sections[s], point, space.bindings());
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw QuadratureError("non-finite section value at a quadrature node");
      }
      t.values[s][node] = v;
    }
  }
  return t;
}

Eigen::MatrixXcd pairings(const NodeTable& t, std::size_t rows, std::size_t offset) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t l = 0; l < rows; ++l) {
      Complex acc = 0.0;
      const auto& a = t.values[k];
      const auto& b = t.values[offset + l];
      for (std::size_t node = 0; node < t.weights.size(); ++node) acc += t.weights[node] * std::conj(a[node]) * b[node];
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = acc;
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const std::vector<LabeledSection>& basis, const PhaseSpace& space,
                             const QuadratureSpec& spec) {
  std::vector<Expr> sections;
  for (const auto& b : basis) sections.push_back(b.section);
  return pairings(tabulate(sections, space, spec), basis.size(), 0);
}

TruncatedOperator assemble_matrix(const std::function<Expr(const Expr&)>& op, const std::vector<LabeledSection>& basis,
                                  const PhaseSpace& space, const QuadratureSpec& spec) {
  if (basis.empty()) throw std::invalid_argument("assemble_matrix: empty basis");
  std::vector<Expr> sections;
  for (const auto& b : basis) sections.push_back(b.section);
  for (const auto& b : basis) sections.push_back(op(b.section));
  const NodeTable t = tabulate(sections, space, spec);
  const Eigen::MatrixXcd gram = pairings(t, basis.size(), 0);
  const auto k = static_cast<Eigen::Index>(basis.size());
  const double defect = (gram - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-6)) {
    throw QuadratureError("assemble_matrix: basis is not orthonormal under the quadrature (defect " +
                          std::to_string(defect) + ")");
  }
  TruncatedOperator out;
  for (const auto& b : basis) out.basis_labels.push_back(b.label);
  out.matrix = pairings(t, basis.size(), basis.size());
  return out;
}

std::vector<std::complex<double>> eigenvalues(const TruncatedOperator& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.matrix, false);
  if (solver.info() != Eigen::Success) throw QuadratureError("eigenvalue computation failed");
  std::vector<std::complex<double>> ev(solver.eigenvalues().data(),
                                       solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

double hermiticity_defect(const TruncatedOperator& op) {
  return (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff();
}

std::string to_json(const TruncatedOperator& op) {
  nlohmann::ordered_json j;
  j["basis_labels"] = op.basis_labels;
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    auto rr = nlohmann::json::array();
    auto ri = nlohmann::json::array();
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
      rr.push_back(op.matrix(r, c).real());
      ri.push_back(op.matrix(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  j["matrix_re"] = re;
  j["matrix_im"] = im;
  j["inner_product"] = op.inner_product;
  return j.dump();
}

}  // namespace gq

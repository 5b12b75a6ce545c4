#include "gq/polarize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gq/sampling.hpp"

namespace gq {

namespace {

const Complex kI(0.0, 1.0);

std::vector<double> phase_point(std::span<const double> x, int dof) {
  std::vector<double> pt(static_cast<std::size_t>(2 * dof), 0.0);
  std::copy(x.begin(), x.end(), pt.begin());
  return pt;
}

}  // namespace

std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::Position: return "pos";
    case Polarization::Momentum: return "mom";
    case Polarization::Holomorphic: return "hol";
  }
  return "?";
}

std::string to_string(Gauge g) { return g == Gauge::Theta ? "theta" : "theta-tilde"; }

ConnectionForm connection_for(Gauge g, int dof) {
  return g == Gauge::Theta ? ConnectionForm::theta(dof) : ConnectionForm::theta_tilde(dof);
}

Expr z_coordinate(int j) { return Expr::x(j) - Expr(kI) * Expr::p(j); }
Expr zbar_coordinate(int j) { return Expr::x(j) + Expr(kI) * Expr::p(j); }

VectorField dzbar_field(int dof, int j) {
  std::vector<Expr> c(static_cast<std::size_t>(2 * dof));
  c[static_cast<std::size_t>(j)] = Expr(0.5);
  c[static_cast<std::size_t>(dof + j)] = Expr(Complex(0.0, -0.5));
  return VectorField(dof, std::move(c));
}

VectorField dz_field(int dof, int j) {
  std::vector<Expr> c(static_cast<std::size_t>(2 * dof));
  c[static_cast<std::size_t>(j)] = Expr(0.5);
  c[static_cast<std::size_t>(dof + j)] = Expr(Complex(0.0, 0.5));
  return VectorField(dof, std::move(c));
}

Expr compose_z(const Expr& f, int dof) {
  std::vector<Expr> values(static_cast<std::size_t>(2 * dof));
  for (int j = 0; j < dof; ++j) {
    values[static_cast<std::size_t>(j)] = z_coordinate(j);
    values[static_cast<std::size_t>(dof + j)] = Expr::p(j);
  }
  return substitute(f, values);
}

double membership_residual(const Expr& phi, Polarization which, const ConnectionForm& theta, const PhaseSpace& space,
                           int samples, std::uint64_t seed) {
  const int n = space.dof();
  std::vector<Expr> derivs;
  for (int j = 0; j < n; ++j) {
    VectorField v = which == Polarization::Position   ? VectorField::coordinate(n, Coordinate::p(j))
                    : which == Polarization::Momentum ? VectorField::coordinate(n, Coordinate::x(j))
                                                      : dzbar_field(n, j);
    derivs.push_back(covariant_derivative(theta, v, phi, space.hbar()));
  }
  double worst = 0.0;
  for (const auto& pt : sample_points(space.dim(), samples, seed)) {
    const double scale = 1.0 + std::abs(evaluate(phi, pt, space.bindings()));
    for (const Expr& d : derivs) worst = std::max(worst, std::abs(evaluate(d, pt, space.bindings())) / scale);
  }
  return worst;
}

// Distributions -----------------------------------------------------------

Distribution Distribution::vertical(int dof) {
  Distribution d{"vertical", {}, false};
  for (int j = 0; j < dof; ++j) d.generators.push_back(VectorField::coordinate(dof, Coordinate::p(j)));
  return d;
}

Distribution Distribution::horizontal(int dof) {
  Distribution d{"horizontal", {}, false};
  for (int j = 0; j < dof; ++j) d.generators.push_back(VectorField::coordinate(dof, Coordinate::x(j)));
  return d;
}

Distribution Distribution::holomorphic(int dof) {
  Distribution d{"holomorphic", {}, true};
  for (int j = 0; j < dof; ++j) d.generators.push_back(dz_field(dof, j));
  return d;
}

Distribution Distribution::non_involutive_example() {
  Distribution d{"non-involutive", {}, false};
  d.generators.push_back(VectorField::coordinate(2, Coordinate::x(0)));
  d.generators.push_back(VectorField(2, {Expr(), Expr(), Expr::x(0), Expr(1.0)}));
  return d;
}

namespace {

Eigen::VectorXcd field_at(const VectorField& v, std::span<const double> pt, const Bindings& b) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.components().size()));
  for (std::size_t k = 0; k < v.components().size(); ++k) out(static_cast<Eigen::Index>(k)) = evaluate(v[k], pt, b);
  return out;
}

int numerical_rank(const Eigen::MatrixXcd& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > 1e-10 * s(0) ? 1 : 0;
  return r;
}

}  // namespace

PolarizationReport polarization_check(const Distribution& d, const PhaseSpace& space, int samples,
                                      std::uint64_t seed) {
  const auto k = d.generators.size();
  if (k == 0) throw std::invalid_argument("polarization_check: empty distribution");
  for (const auto& g : d.generators) {
    if (g.dof() != space.dof()) throw std::invalid_argument("polarization_check: generator dimension mismatch");
  }
  std::vector<VectorField> brackets;
  std::vector<Expr> pairings;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      brackets.push_back(lie_bracket(d.generators[a], d.generators[b]));
      pairings.push_back(symplectic_pairing(d.generators[a], d.generators[b]));
    }
  }
  PolarizationReport r;
  r.const_intersection = true;
  bool first = true;
  for (const auto& pt : sample_points(space.dim(), samples, seed)) {
    Eigen::MatrixXcd g(space.dim(), static_cast<Eigen::Index>(k));
    for (std::size_t a = 0; a < k; ++a) g.col(static_cast<Eigen::Index>(a)) = field_at(d.generators[a], pt, space.bindings());
    if (numerical_rank(g) != static_cast<int>(k)) {
      throw RankDeficiency("polarization_check: generators are linearly dependent at a sample point");
    }
    const auto qr = g.colPivHouseholderQr();
    for (const auto& br : brackets) {
      const Eigen::VectorXcd v = field_at(br, pt, space.bindings());
      const Eigen::VectorXcd c = qr.solve(v);
      r.involutivity_residual = std::max(r.involutivity_residual, (g * c - v).norm() / (1.0 + v.norm()));
    }
    for (const auto& w : pairings) r.isotropy_residual = std::max(r.isotropy_residual, std::abs(evaluate(w, pt, space.bindings())));

    Eigen::MatrixXcd both(space.dim(), static_cast<Eigen::Index>(2 * k));
    both << g, g.conjugate();
    const int inter = static_cast<int>(2 * k) - numerical_rank(both);
    if (first) {
      r.intersection_dim = inter;
      first = false;
    } else if (inter != r.intersection_dim) {
      r.const_intersection = false;
    }
  }
  r.involutive = r.involutivity_residual < 1e-8;
  r.lagrangian = r.isotropy_residual < 1e-8 && static_cast<int>(k) == space.dof();
  return r;
}

double leaf_projection(LeafPreset preset, double x, double p) {
  switch (preset) {
    case LeafPreset::Vertical: return x;
    case LeafPreset::Horizontal: return p;
    case LeafPreset::Radial:
      if (x == 0.0 && p == 0.0) throw std::domain_error("leaf_projection: the radial foliation excludes the origin");
      return x * x + p * p;
  }
  return 0.0;
}

// Segal-Bargmann ---------------------------------------------------------------

Expr bargmann_basis_element(int k, double hbar, Gauge gauge) {
  if (k < 0) throw std::invalid_argument("bargmann basis index must be non-negative");
  const Expr x = Expr::x(0);
  const Expr p = Expr::p(0);
  const Expr z = z_coordinate(0);
  if (gauge == Gauge::ThetaTilde) return pow(z, k) * exp(Expr(-1.0 / (4.0 * hbar)) * (x * x + p * p));
  return pow(z, k) * exp(Expr(-1.0 / (4.0 * hbar)) * z * z) * exp(Expr(-1.0 / (2.0 * hbar)) * p * p);
}

std::vector<LabeledSection> bargmann_basis(int k_max, double hbar, Gauge gauge) {
  std::vector<LabeledSection> out;
  for (int k = 0; k <= k_max; ++k) out.push_back({"psi_" + std::to_string(k), bargmann_basis_element(k, hbar, gauge)});
  return out;
}

QuadratureSpec bargmann_quadrature(double hbar) { return QuadratureSpec{64, std::sqrt(2.0 * hbar)}; }

Eigen::MatrixXcd bargmann_gram(int k_max, double hbar, Gauge gauge) {
  if (k_max < 0 || k_max > 40) throw std::invalid_argument("bargmann_gram: K must lie in [0, 40]");
  if (!(hbar > 0.0)) throw std::invalid_argument("bargmann_gram: hbar must be positive");
  return gram_matrix(bargmann_basis(k_max, hbar, gauge), PhaseSpace(1, hbar), bargmann_quadrature(hbar));
}

Expr bargmann_ho_apply(const Expr& f, double hbar, int dof) {
  std::vector<Expr> terms;
  for (int j = 0; j < dof; ++j) terms.push_back(Expr::x(j) * differentiate(f, Coordinate::x(j)));
  return Expr(hbar) * sum(std::move(terms));
}

CrossCheck bargmann_vs_prequant_crosscheck(int k_max, double hbar) {
  if (k_max < 0 || k_max > 20) throw std::invalid_argument("crosscheck: K must lie in [0, 20]");
  const PhaseSpace space(1, hbar);
  auto basis = bargmann_basis(k_max, hbar, Gauge::ThetaTilde);
  const QuadratureSpec spec = bargmann_quadrature(hbar);
  const Eigen::MatrixXcd gram = gram_matrix(basis, space, spec);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double norm = std::sqrt(gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
    basis[k].section = Expr(1.0 / norm) * basis[k].section;
  }
  const Expr h = Expr(0.5) * (Expr::x(0) * Expr::x(0) + Expr::p(0) * Expr::p(0));
  const PrequantumOperator q(h, ConnectionForm::theta_tilde(1), space);
  CrossCheck out;
  out.matrix = assemble_matrix([&q](const Expr& s) { return q(s); }, basis, space, spec);
  out.matrix.inner_product = "L2(R^2, dx dp), Gram-normalized theta-tilde basis";
  out.eigenvalues = eigenvalues(out.matrix);
  const auto n = out.matrix.matrix.rows();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) expected(k, k) = static_cast<double>(k) * hbar;
  out.discrepancy = (out.matrix.matrix - expected).cwiseAbs().maxCoeff();
  return out;
}

// Half-forms --------------------------------------------------------------------

TailGrowth tail_growth(const std::function<double(double)>& g) {
  TailGrowth t;
  for (double r : {10.0, 20.0, 40.0}) t.partial.push_back(integrate_adaptive(g, -r, r, 1e-6, 1e-300, 16).value);
  for (std::size_t i = 1; i < t.partial.size(); ++i) {
    if (std::abs(t.partial[i]) > 1.5 * std::abs(t.partial[i - 1]) && std::abs(t.partial[i]) > 0.0) t.divergent = true;
  }
  return t;
}

TailGrowth naive_position_norm(const Expr& phi) {
  const PhaseSpace space(1);
  auto density = [&](double x, double p) {
    const double pt[2] = {x, p};
    return std::norm(evaluate(phi, pt, space.bindings()));
  };
  TailGrowth t;
  for (double r : {10.0, 20.0, 40.0}) {
    auto outer = [&](double p) {
      return integrate_adaptive([&](double x) { return density(x, p); }, -r, r, 1e-10, 1e-300, 30).value;
    };
    t.partial.push_back(integrate_adaptive(outer, -r, r, 1e-9, 1e-300, 30).value);
  }
  for (std::size_t i = 1; i < t.partial.size(); ++i) {
    if (t.partial[i] > 1.5 * t.partial[i - 1] && t.partial[i] > 0.0) t.divergent = true;
  }
  return t;
}

namespace {

void require_p_independent(const Expr& e, const PhaseSpace& space, const char* what) {
  std::vector<Expr> dp;
  for (int j = 0; j < space.dof(); ++j) dp.push_back(differentiate(e, Coordinate::p(j)));
  for (const auto& pt : sample_points(space.dim(), 20, 19)) {
    for (const Expr& d : dp) {
      if (std::abs(evaluate(d, pt, space.bindings())) > 1e-10) {
        throw std::invalid_argument(std::string("half-form ") + what + " depends on p");
      }
    }
  }
}

}  // namespace

Complex halfform_inner_product(const HalfFormSection& a, const HalfFormSection& b, const PhaseSpace& space,
                               const QuadratureSpec& spec) {
  require_p_independent(a.section, space, "section");
  require_p_independent(a.coefficient, space, "coefficient");
  require_p_independent(b.section, space, "section");
  require_p_independent(b.coefficient, space, "coefficient");
  const int n = space.dof();
  const Expr left = a.section * a.coefficient;
  const Expr right = b.section * b.coefficient;
  auto integrand = [&](std::span<const double> x) {
    const auto pt = phase_point(x, n);
    return std::conj(evaluate(left, pt, space.bindings())) * evaluate(right, pt, space.bindings());
  };
  for (int axis = 0; axis < n; ++axis) {
    const TailGrowth t = tail_growth([&](double s) {
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      x[static_cast<std::size_t>(axis)] = s;
      return std::abs(integrand(x));
    });
    if (t.divergent) throw DivergenceError("half-form pairing: integrand does not decay");
  }
  return integrate_gaussian(integrand, n, spec);
}

bool polarized_kp_check(const Expr& f, const PhaseSpace& space, int samples, std::uint64_t seed) {
  std::vector<Expr> dp;
  for (int j = 0; j < space.dof(); ++j) dp.push_back(differentiate(f, Coordinate::p(j)));
  for (const auto& pt : sample_points(space.dim(), samples, seed)) {
    const double scale = 1.0 + std::abs(evaluate(f, pt, space.bindings()));
    for (const Expr& d : dp) {
      if (std::abs(evaluate(d, pt, space.bindings())) > 1e-10 * scale) return false;
    }
  }
  return true;
}

}  // namespace gq

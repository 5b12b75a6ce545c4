#include "gq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gq/polarize.hpp"
#include "gq/sampling.hpp"

namespace gq {

namespace {

const Complex kI(0.0, 1.0);

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::uint64_t next_seed(std::mt19937_64& rng) { return rng(); }

// Tracks the worst residual of one identity.
struct Tally {
  CheckItem item;
  Tally(std::string name, double threshold, bool negative = false) {
    item.name = std::move(name);
    item.threshold = threshold;
    item.negative_control = negative;
    item.residual = negative ? std::numeric_limits<double>::infinity() : 0.0;
  }
  void add(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    item.residual = item.negative_control ? std::min(item.residual, r) : std::max(item.residual, r);
  }
  void count() { ++item.cases; }
  CheckItem done() {
    item.passed = item.negative_control ? item.residual > item.threshold : item.residual < item.threshold;
    return item;
  }
};

int draw_dof(std::mt19937_64& rng, const CheckOptions& o) { return o.dof > 0 ? o.dof : pick(rng, 1, 3); }

}  // namespace

Expr random_polynomial(std::mt19937_64& rng, int dof, int max_degree, int max_terms) {
  std::vector<Expr> terms;
  const int n_terms = pick(rng, 1, max_terms);
  for (int t = 0; t < n_terms; ++t) {
    int coef = pick(rng, -3, 2);
    if (coef >= 0) ++coef;
    std::vector<Expr> factors{Expr(coef)};
    const int degree = pick(rng, 0, max_degree);
    for (int d = 0; d < degree; ++d) factors.push_back(Expr::coordinate(Coordinate{
        pick(rng, 0, 1) == 0 ? Coordinate::Kind::Position : Coordinate::Kind::Momentum, pick(rng, 0, dof - 1)}));
    terms.push_back(product(std::move(factors)));
  }
  return sum(std::move(terms));
}

Expr random_section(std::mt19937_64& rng, int dof, int max_degree) {
  return random_polynomial(rng, dof, max_degree) + Expr(kI) * random_polynomial(rng, dof, max_degree);
}

VectorField random_vector_field(std::mt19937_64& rng, int dof, int max_degree) {
  std::vector<Expr> c;
  for (int k = 0; k < 2 * dof; ++k) c.push_back(random_polynomial(rng, dof, max_degree, 2));
  return VectorField(dof, std::move(c));
}

double relative_residual(Complex value, std::initializer_list<Complex> terms) {
  double scale = 1.0;
  for (Complex t : terms) scale += std::abs(t);
  return std::abs(value) / scale;
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& i : items) {
    nlohmann::ordered_json e;
    e["name"] = i.name;
    e["residual"] = std::isfinite(i.residual) ? nlohmann::ordered_json(i.residual) : nlohmann::ordered_json(nullptr);
    e["threshold"] = i.threshold;
    e["cases"] = i.cases;
    e["negative_control"] = i.negative_control;
    e["passed"] = i.passed;
    arr.push_back(e);
  }
  j["items"] = arr;
  return j.dump(2);
}

std::string CheckReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "suite,name,residual,threshold,cases,negative_control,passed\n";
  for (const auto& i : items) {
    os << suite << ',' << i.name << ',' << i.residual << ',' << i.threshold << ',' << i.cases << ','
       << (i.negative_control ? "true" : "false") << ',' << (i.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

// Poisson algebra -------------------------------------------------------------

CheckReport check_poisson(const CheckOptions& o) {
  const int cases = o.cases > 0 ? o.cases : 200;
  const int points = o.points > 0 ? o.points : 100;
  std::mt19937_64 rng(o.seed);
  Tally anti("antisymmetry", 1e-8), bilin("bilinearity", 1e-8), leib("leibniz", 1e-8), jac("jacobi", 1e-8);
  Tally field("hamiltonian_field_bracket", 1e-8);
  for (int c = 0; c < cases; ++c) {
    const int n = draw_dof(rng, o);
    const PhaseSpace space(n, o.hbar);
    const Expr f = random_polynomial(rng, n, 4);
    const Expr g = random_polynomial(rng, n, 4);
    const Expr h = random_polynomial(rng, n, 4);
    const double a = pick(rng, -5, 5);
    const double b = pick(rng, -5, 5);
    const auto pts = sample_points(space.dim(), points, next_seed(rng));

    const Expr fg = poisson_bracket(f, g, space);
    const Expr gf = poisson_bracket(g, f, space);
    const Expr lin = poisson_bracket(Expr(a) * f + Expr(b) * g, h, space);
    const Expr fh = poisson_bracket(f, h, space);
    const Expr gh = poisson_bracket(g, h, space);
    const Expr prod = poisson_bracket(f * g, h, space);
    const Expr j1 = poisson_bracket(f, gh, space);
    const Expr j2 = poisson_bracket(g, poisson_bracket(h, f, space), space);
    const Expr j3 = poisson_bracket(h, fg, space);
    // [X_f, X_g] = -X_{f,g} under the fixed conventions.
    const VectorField lhs = lie_bracket(hamiltonian_vector_field(f, space), hamiltonian_vector_field(g, space));
    const VectorField rhs = hamiltonian_vector_field(fg, space);

    for (const auto& pt : pts) {
      const auto& bd = space.bindings();
      const Complex vfg = evaluate(fg, pt, bd), vgf = evaluate(gf, pt, bd);
      anti.add(relative_residual(vfg + vgf, {vfg, vgf}));
      const Complex vl = evaluate(lin, pt, bd), vfh = evaluate(fh, pt, bd), vgh = evaluate(gh, pt, bd);
      bilin.add(relative_residual(vl - a * vfh - b * vgh, {vl, a * vfh, b * vgh}));
      const Complex vf = evaluate(f, pt, bd), vg = evaluate(g, pt, bd), vp = evaluate(prod, pt, bd);
      leib.add(relative_residual(vp - vf * vgh - vg * vfh, {vp, vf * vgh, vg * vfh}));
      const Complex a1 = evaluate(j1, pt, bd), a2 = evaluate(j2, pt, bd), a3 = evaluate(j3, pt, bd);
      jac.add(relative_residual(a1 + a2 + a3, {a1, a2, a3}));
      for (std::size_t k = 0; k < lhs.components().size(); ++k) {
        const Complex l = evaluate(lhs[k], pt, bd), r = evaluate(rhs[k], pt, bd);
        field.add(relative_residual(l + r, {l, r}));
      }
    }
    anti.count();
    bilin.count();
    leib.count();
    jac.count();
    field.count();
  }

  // {x^i, p_j} must simplify to the exact constant delta_ij.
  Tally canon("canonical_brackets", 0.5);
  for (int n = 1; n <= 3; ++n) {
    const PhaseSpace space(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto v = poisson_bracket(Expr::x(i), Expr::p(j), space).as_constant();
        canon.add(v && *v == Complex(i == j ? 1.0 : 0.0) ? 0.0 : 1.0);
        canon.count();
      }
    }
  }
  return CheckReport{"poisson", o.seed, {anti.done(), bilin.done(), leib.done(), jac.done(), field.done(), canon.done()}};
}

// Curvature ---------------------------------------------------------------------

namespace {

std::vector<std::string> theta_choices(const CheckOptions& o) {
  if (o.theta) return {*o.theta};
  return {"theta", "theta-tilde"};
}

}  // namespace

CheckReport check_curvature(const CheckOptions& o) {
  const int cases = o.cases > 0 ? o.cases : 100;
  const int points = o.points > 0 ? o.points : 20;
  std::mt19937_64 rng(o.seed);
  CheckReport report{"curvature", o.seed, {}};
  for (const std::string& choice : theta_choices(o)) {
    Tally exact("d_theta_equals_omega[" + choice + "]", 1e-9);
    Tally curv("curvature_identity[" + choice + "]", 1e-8);
    for (int c = 0; c < cases; ++c) {
      const int n = draw_dof(rng, o);
      const PhaseSpace space(n, o.hbar);
      const ConnectionForm theta = parse_one_form(choice, space);
      if (c < 3) {
        exact.add(exactness_residual(theta, space, 100, next_seed(rng)));
        exact.count();
      }
      const VectorField x = random_vector_field(rng, n, 2);
      const VectorField y = random_vector_field(rng, n, 2);
      const Expr s = random_section(rng, n, 3);
      const double hb = space.hbar();
      const Expr lhs = covariant_derivative(theta, x, covariant_derivative(theta, y, s, hb), hb) -
                       covariant_derivative(theta, y, covariant_derivative(theta, x, s, hb), hb);
      const Expr br = covariant_derivative(theta, lie_bracket(x, y), s, hb);
      const Expr om = Expr(kI / hb) * symplectic_pairing(x, y) * s;
      for (const auto& pt : sample_points(space.dim(), points, next_seed(rng))) {
        const Complex l = evaluate(lhs, pt, space.bindings());
        const Complex b = evaluate(br, pt, space.bindings());
        const Complex w = evaluate(om, pt, space.bindings());
        curv.add(relative_residual(l - b + w, {l, b, w}));
      }
      curv.count();
    }
    report.items.push_back(exact.done());
    report.items.push_back(curv.done());
  }
  return report;
}

// Commutator --------------------------------------------------------------------

CheckReport check_commutator(const CheckOptions& o) {
  const int cases = o.cases > 0 ? o.cases : 100;
  const int points = o.points > 0 ? o.points : 20;
  std::mt19937_64 rng(o.seed);
  CheckReport report{"commutator", o.seed, {}};
  for (const std::string& choice : theta_choices(o)) {
    Tally comm("commutator_identity[" + choice + "]", 1e-7);
    Tally canon("canonical_commutator[" + choice + "]", 1e-7);
    Tally unit("q_of_one_is_identity[" + choice + "]", 1e-12);
    for (int c = 0; c < cases; ++c) {
      const int n = draw_dof(rng, o);
      const PhaseSpace space(n, o.hbar);
      const ConnectionForm theta = parse_one_form(choice, space);
      const Expr f = random_polynomial(rng, n, 3);
      const Expr g = random_polynomial(rng, n, 3);
      const Expr s = random_section(rng, n, 3);
      const PrequantumOperator qf(f, theta, space), qg(g, theta, space);
      const PrequantumOperator qfg(poisson_bracket(f, g, space), theta, space);
      const Expr lhs = Expr(-kI / space.hbar()) * (qf(qg(s)) - qg(qf(s)));
      const Expr rhs = qfg(s);
      const Expr one = PrequantumOperator(Expr(1.0), theta, space)(s) - s;
      for (const auto& pt : sample_points(space.dim(), points, next_seed(rng))) {
        const Complex l = evaluate(lhs, pt, space.bindings());
        const Complex r = evaluate(rhs, pt, space.bindings());
        comm.add(relative_residual(l - r, {l, r}));
        unit.add(std::abs(evaluate(one, pt, space.bindings())));
      }
      comm.count();
      unit.count();
    }
    // [Q(x^j), Q(p_j)] s = i hbar s.
    for (int n = 1; n <= 3; ++n) {
      const PhaseSpace space(n, o.hbar);
      const ConnectionForm theta = parse_one_form(choice, space);
      const Expr s = random_section(rng, n, 3);
      for (int j = 0; j < n; ++j) {
        const PrequantumOperator qx(Expr::x(j), theta, space), qp(Expr::p(j), theta, space);
        const Expr r = qx(qp(s)) - qp(qx(s)) - Expr(kI * space.hbar()) * s;
        for (const auto& pt : sample_points(space.dim(), points, next_seed(rng))) {
          canon.add(relative_residual(evaluate(r, pt, space.bindings()), {evaluate(s, pt, space.bindings())}));
        }
        canon.count();
      }
    }
    report.items.push_back(comm.done());
    report.items.push_back(canon.done());
    report.items.push_back(unit.done());
  }
  return report;
}

// Liouville ---------------------------------------------------------------------

CheckReport check_liouville(const CheckOptions& o) {
  const int cases = o.cases > 0 ? o.cases : 100;
  const int points = o.points > 0 ? o.points : 20;
  std::mt19937_64 rng(o.seed);
  Tally div("divergence_free", 1e-10);
  Tally jac("flow_jacobian_determinant", 1e-6);
  for (int c = 0; c < cases; ++c) {
    const int n = draw_dof(rng, o);
    const PhaseSpace space(n, o.hbar);
    const Expr f = random_polynomial(rng, n, 4);
    const Expr d = liouville_divergence(f, space);
    for (const auto& pt : sample_points(space.dim(), points, next_seed(rng))) {
      div.add(std::abs(evaluate(d, pt, space.bindings())));
    }
    div.count();
  }
  // One implicit-midpoint step; Jacobian by central differences.
  const int flows = std::min(cases, 20);
  FlowOptions fo;
  fo.tolerance = 1e-14;
  fo.max_iterations = 200;
  for (int c = 0; c < flows; ++c) {
    const int n = o.dof > 0 ? o.dof : pick(rng, 1, 2);
    const PhaseSpace space(n, o.hbar);
    const Expr h = random_polynomial(rng, n, 3);
    const auto grad = gradient(h, space);
    const auto start = sample_points(space.dim(), 1, next_seed(rng), 1.0).front();
    const double dt = 0.01;
    const double eps = 1e-5;
    const int dim = space.dim();
    Eigen::MatrixXd jm(dim, dim);
    for (int k = 0; k < dim; ++k) {
      auto up = start, dn = start;
      up[static_cast<std::size_t>(k)] += eps;
      dn[static_cast<std::size_t>(k)] -= eps;
      const auto a = midpoint_step(grad, space, up, dt, fo);
      const auto b = midpoint_step(grad, space, dn, dt, fo);
      for (int r = 0; r < dim; ++r) jm(r, k) = (a[static_cast<std::size_t>(r)] - b[static_cast<std::size_t>(r)]) / (2 * eps);
    }
    jac.add(std::abs(jm.determinant() - 1.0));
    jac.count();
  }
  return CheckReport{"liouville", o.seed, {div.done(), jac.done()}};
}

// Polarization ------------------------------------------------------------------

CheckReport check_polarization(const CheckOptions& o) {
  const int cases = o.cases > 0 ? o.cases : 20;
  const int points = o.points > 0 ? o.points : 100;
  std::mt19937_64 rng(o.seed);
  const double hb = o.hbar;
  Tally pos("pos_membership", kMembershipTolerance), pos_bad("pos_counterexample", 1e-2, true);
  Tally mom("mom_membership", kMembershipTolerance), mom_bad("mom_counterexample", 1e-2, true);
  Tally hol("hol_membership[theta]", kMembershipTolerance), hol_bad("hol_counterexample[theta]", 1e-2, true);
  Tally holt("hol_membership[theta-tilde]", kMembershipTolerance);
  Tally holt_bad("hol_counterexample[theta-tilde]", 1e-2, true);
  for (int c = 0; c < cases; ++c) {
    const int n = draw_dof(rng, o);
    const PhaseSpace space(n, hb);
    const ConnectionForm theta = ConnectionForm::theta(n);
    const ConnectionForm tilde = ConnectionForm::theta_tilde(n);
    Expr xp, p2, z2;
    for (int j = 0; j < n; ++j) {
      xp += Expr::x(j) * Expr::p(j);
      p2 += Expr::p(j) * Expr::p(j);
      z2 += Expr::x(j) * Expr::x(j) + Expr::p(j) * Expr::p(j);
    }
    // Random polynomial in x only, p only, and in z (x standing for z).
    std::vector<Expr> x_only(static_cast<std::size_t>(2 * n)), p_only(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
      x_only[static_cast<std::size_t>(j)] = Expr::x(j);
      x_only[static_cast<std::size_t>(n + j)] = Expr::x(j);
      p_only[static_cast<std::size_t>(j)] = Expr::p(j);
      p_only[static_cast<std::size_t>(n + j)] = Expr::p(j);
    }
    const Expr base = random_polynomial(rng, n, 3);
    const Expr psi_x = substitute(base, x_only);
    const Expr psi_p = substitute(base, p_only);
    const Expr f_z = compose_z(substitute(base, x_only), n);
    const auto seed = next_seed(rng);

    pos.add(membership_residual(psi_x, Polarization::Position, theta, space, points, seed));
    pos_bad.add(membership_residual(Expr::p(0) * psi_x + Expr::p(0), Polarization::Position, theta, space, points, seed));
    const Expr wave = exp(Expr(kI / hb) * xp);
    mom.add(membership_residual(wave * psi_p, Polarization::Momentum, theta, space, points, seed));
    mom_bad.add(membership_residual(Expr::x(0) * wave * (psi_p + Expr(1.0)), Polarization::Momentum, theta, space,
                                    points, seed));
    const Expr gauss = exp(Expr(-1.0 / (2.0 * hb)) * p2);
    hol.add(membership_residual(gauss * f_z, Polarization::Holomorphic, theta, space, points, seed));
    hol_bad.add(membership_residual(gauss * zbar_coordinate(0), Polarization::Holomorphic, theta, space, points, seed));
    const Expr gauss_t = exp(Expr(-1.0 / (4.0 * hb)) * z2);
    holt.add(membership_residual(gauss_t * f_z, Polarization::Holomorphic, tilde, space, points, seed));
    holt_bad.add(membership_residual(gauss_t * zbar_coordinate(0), Polarization::Holomorphic, tilde, space, points, seed));
    for (Tally* t : {&pos, &pos_bad, &mom, &mom_bad, &hol, &hol_bad, &holt, &holt_bad}) t->count();
  }

  Tally vert("vertical_distribution", 0.5), holo("holomorphic_distribution", 0.5), noninv("non_involutive_pair", 0.5);
  for (int n = 1; n <= 3; ++n) {
    const PhaseSpace space(n, hb);
    const auto rv = polarization_check(Distribution::vertical(n), space, points, next_seed(rng));
    vert.add(rv.involutive && rv.lagrangian && rv.const_intersection && rv.intersection_dim == n ? 0.0 : 1.0);
    vert.count();
    const auto rh = polarization_check(Distribution::holomorphic(n), space, points, next_seed(rng));
    holo.add(rh.involutive && rh.lagrangian && rh.const_intersection && rh.intersection_dim == 0 ? 0.0 : 1.0);
    holo.count();
  }
  const auto rn = polarization_check(Distribution::non_involutive_example(), PhaseSpace(2, hb), points, next_seed(rng));
  noninv.add(rn.involutive ? 1.0 : 0.0);
  noninv.count();

  return CheckReport{"polarization", o.seed,
                     {pos.done(), pos_bad.done(), mom.done(), mom_bad.done(), hol.done(), hol_bad.done(), holt.done(),
                      holt_bad.done(), vert.done(), holo.done(), noninv.done()}};
}

std::vector<std::string> suite_names() { return {"poisson", "curvature", "commutator", "liouville", "polarization"}; }

CheckReport run_check(std::string_view suite, const CheckOptions& options) {
  if (suite == "poisson") return check_poisson(options);
  if (suite == "curvature") return check_curvature(options);
  if (suite == "commutator") return check_commutator(options);
  if (suite == "liouville") return check_liouville(options);
  if (suite == "polarization") return check_polarization(options);
  throw std::invalid_argument("unknown check suite '" + std::string(suite) + "'");
}

}  // namespace gq

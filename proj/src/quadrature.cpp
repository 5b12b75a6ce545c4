#include "gq/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>

namespace gq {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
  constexpr double kPim4 = 0.7511255444649425;  // pi^(-1/4)
  const int half = (n + 1) / 2;
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the largest roots, then extrapolation from previous ones.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = kPim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  // Ascending order.
  GaussHermiteRule rule;
  rule.nodes.assign(x.rbegin(), x.rend());
  rule.weights.assign(w.rbegin(), w.rend());
  rule.scaled_weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.scaled_weights[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
  double max_abs;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double max_abs = std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    max_abs = std::max({max_abs, std::abs(f1), std::abs(f2)});
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * h, std::abs((resk - resg) * h), max_abs};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth, int max_depth,
           const Panel& whole, QuadratureResult& out) {
  out.max_depth_reached = std::max(out.max_depth_reached, depth);
  if (!std::isfinite(whole.kronrod)) {
    out.value = whole.kronrod;
    out.converged = false;
    out.max_abs_integrand = std::numeric_limits<double>::infinity();
    return;
  }
  if (whole.error <= tol) {
    out.value += whole.kronrod;
    out.error_estimate += whole.error;
    return;
  }
  if (depth >= max_depth) {
    out.value += whole.kronrod;
    out.error_estimate += whole.error;
    out.converged = false;
    out.max_abs_integrand = std::max(out.max_abs_integrand, whole.max_abs);
    return;
  }
  const double m = 0.5 * (a + b);
  const Panel left = gk15(f, a, m);
  const Panel right = gk15(f, m, b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, left, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, right, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                    double abs_tol, int max_depth) {
  QuadratureResult out;
  out.converged = true;
  if (a == b) return out;
  const Panel whole = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole.kronrod));
  adapt(f, a, b, tol, 0, max_depth, whole, out);
  if (!out.converged) return out;
  // Panels that met tolerance still report their size.
  out.max_abs_integrand = std::max(out.max_abs_integrand, whole.max_abs);
  return out;
}

std::complex<double> integrate_gaussian(const std::function<std::complex<double>(std::span<const double>)>& f, int dim,
                                        const QuadratureSpec& spec) {
  if (dim < 1) throw std::invalid_argument("integrate_gaussian: dimension must be positive");
  if (!(spec.scale > 0.0)) throw std::invalid_argument("integrate_gaussian: scale must be positive");
  const GaussHermiteRule rule = gauss_hermite(spec.nodes);
  const auto n = static_cast<std::size_t>(spec.nodes);
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> point(static_cast<std::size_t>(dim));
  std::complex<double> total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      point[a] = spec.scale * rule.nodes[idx[a]];
      w *= spec.scale * rule.scaled_weights[idx[a]];
    }
    total += w * f(point);
    std::size_t a = idx.size();
    while (a > 0) {
      --a;
      if (++idx[a] < n) break;
      idx[a] = 0;
      if (a == 0) return total;
    }
  }
}

}  // namespace gq

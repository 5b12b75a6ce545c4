#pragma once

// Prequantization of (T*R^n, Omega) on the trivial line bundle.
//
// Sections of M x C are complex-valued Exprs. The connection is
// nabla_X s = X(s) - (i/hbar) theta(X) s, and the prequantum operator is
// Q(f) s = -i hbar nabla_{X_f} s + f s.
//
// Under the bracket and field conventions of mech.hpp the commutator relation
// that actually holds is -(i/hbar)[Q(f), Q(g)] = Q({f, g}); in particular
// [Q(x), Q(p)] = +i hbar. CommutatorSign selects which form a residual tests.

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "gq/expr.hpp"
#include "gq/mech.hpp"
#include "gq/quadrature.hpp"

namespace gq {

/// theta = sum_k c_k dq^k with coefficients ordered (dx1..dxn, dp1..dpn).
struct ConnectionForm {
  int dof = 1;
  std::vector<Expr> components;
  std::string label;

  /// theta = sum_j p_j dx^j (the tautological form).
  static ConnectionForm theta(int dof);
  /// theta~ = 1/2 sum_j (p_j dx^j - x^j dp_j).
  static ConnectionForm theta_tilde(int dof);

  /// theta(X).
  Expr apply(const VectorField& x) const;
  std::string str() const;
};

/// Parses "c1 dx1 + c2 dp1 - ..." (coefficients are Exprs, optional '*'
/// before the differential; plain dx, dp when n = 1), or a preset name
/// "theta" / "theta-tilde". Throws ParseError.
ConnectionForm parse_one_form(std::string_view text, const PhaseSpace& space);

/// max over samples and index pairs of |d theta(e_a, e_b) - Omega(e_a, e_b)|.
double exactness_residual(const ConnectionForm& theta, const PhaseSpace& space, int samples = 100,
                          std::uint64_t seed = 1);

/// X(s) - (i/hbar) theta(X) s.
Expr covariant_derivative(const ConnectionForm& theta, const VectorField& x, const Expr& s, double hbar);

/// [nabla_X, nabla_Y]s - nabla_{[X,Y]}s + (i/hbar) Omega(X,Y) s with the
/// phase-space Omega; identically zero exactly when d theta = Omega.
Expr curvature_residual(const ConnectionForm& theta, const VectorField& x, const VectorField& y, const Expr& s,
                        double hbar);

class PrequantumOperator {
 public:
  PrequantumOperator(Expr f, ConnectionForm theta, const PhaseSpace& space);
  Expr apply(const Expr& s) const;
  Expr operator()(const Expr& s) const { return apply(s); }
  const Expr& observable() const { return f_; }
  const VectorField& field() const { return field_; }

 private:
  Expr f_;
  ConnectionForm theta_;
  double hbar_;
  VectorField field_;
};

enum class CommutatorSign {
  /// -(i/hbar)[Q(f), Q(g)] = Q({f, g}); the relation that holds.
  MinusIOverHbar,
  /// (i/hbar)[Q(f), Q(g)] = Q({f, g}); kept for comparison.
  PlusIOverHbar,
};

/// sign*(i/hbar)(Q(f)Q(g) - Q(g)Q(f))s - Q({f,g})s.
Expr commutator_residual(const Expr& f, const Expr& g, const Expr& s, const ConnectionForm& theta,
                         const PhaseSpace& space, CommutatorSign sign = CommutatorSign::MinusIOverHbar);

/// The angular mode f(r) e^{i n phi} with f(r) = e^{-r^2/4}, phi = arg(x - i p),
/// written as (x -+ i p)^{|n|} (x^2 + p^2)^{-|n|/2} e^{-(x^2+p^2)/4}.
Expr angular_mode(int n);

struct ModeEigenvalue {
  int mode = 0;
  double eigenvalue = 0.0;
  /// max over samples of |Q(H)psi / psi - n hbar|.
  double ratio_error = 0.0;
};

/// Q(H), H = (x^2 + p^2)/2 in the theta~ gauge, applied to the modes
/// n = -n_modes..n_modes; eigenvalues read off by pointwise ratio.
std::vector<ModeEigenvalue> prequantum_ho_spectrum(int n_modes, double hbar, int samples = 100, std::uint64_t seed = 7);

struct LabeledSection {
  std::string label;
  Expr section;
};

struct TruncatedOperator {
  std::vector<std::string> basis_labels;
  Eigen::MatrixXcd matrix;
  std::string inner_product = "L2(R^2n, dx dp), tensor Gauss-Hermite";
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram matrix G_kl = <b_k, b_l> = int conj(b_k) b_l dx dp.
Eigen::MatrixXcd gram_matrix(const std::vector<LabeledSection>& basis, const PhaseSpace& space,
                             const QuadratureSpec& spec);

/// M_kl = <b_k, op(b_l)>. The basis must be orthonormal to 1e-6 under the
/// quadrature; otherwise QuadratureError is thrown.
TruncatedOperator assemble_matrix(const std::function<Expr(const Expr&)>& op, const std::vector<LabeledSection>& basis,
                                  const PhaseSpace& space, const QuadratureSpec& spec);

/// Eigenvalues sorted by real part, ties by imaginary part.
std::vector<std::complex<double>> eigenvalues(const TruncatedOperator& op);
/// ||M - M^*||_max.
double hermiticity_defect(const TruncatedOperator& op);

/// {"basis_labels": [...], "matrix_re": [[...]], "matrix_im": [[...]]}.
std::string to_json(const TruncatedOperator& op);

}  // namespace gq

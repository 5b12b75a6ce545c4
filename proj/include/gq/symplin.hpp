#pragma once

// Symplectic linear algebra on R^{2n} and its complexification.
//
// Rank and containment decisions use singular values relative to the largest
// one with a 1e-10 threshold. Subspaces are compared through their orthogonal
// projectors, never through bases.

#include <Eigen/Dense>
#include <string>

namespace gq::symplin {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Antisymmetric nondegenerate form, Omega(u, v) = u^T M v.
class SymplecticForm {
 public:
  explicit SymplecticForm(RealMatrix matrix);

  const RealMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int half_dim() const { return dim() / 2; }

  double operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(matrix_ * v); }
  /// Complex-bilinear extension to V^C (no conjugation).
  std::complex<double> operator()(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

 private:
  RealMatrix matrix_;
};

/// J with J^2 = -Id.
class ComplexStructure {
 public:
  explicit ComplexStructure(RealMatrix matrix);
  const RealMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  RealMatrix matrix_;
};

/// Column span of a full-column-rank real basis (possibly empty).
class Subspace {
 public:
  Subspace(int ambient_dim, RealMatrix basis);
  static Subspace zero(int ambient_dim) { return Subspace(ambient_dim, RealMatrix(ambient_dim, 0)); }
  static Subspace full(int ambient_dim) { return Subspace(ambient_dim, RealMatrix::Identity(ambient_dim, ambient_dim)); }

  const RealMatrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return ambient_; }
  /// Orthogonal projector onto the span.
  RealMatrix projector() const;

 private:
  int ambient_;
  RealMatrix basis_;
};

/// Column span of a full-column-rank complex basis.
class ComplexSubspace {
 public:
  explicit ComplexSubspace(ComplexMatrix basis);
  const ComplexMatrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  ComplexSubspace conjugate() const { return ComplexSubspace(basis_.conjugate()); }
  ComplexMatrix projector() const;

 private:
  ComplexMatrix basis_;
};

/// h(u, v) = u^* M v on a chosen basis of F.
struct HermitianForm {
  ComplexMatrix matrix;
  bool positive_definite = false;
  /// ||M - M^*||_max, reported so callers can confirm Hermiticity.
  double hermiticity_residual = 0.0;
};

struct DarbouxBasis {
  RealMatrix e;  // 2n x n
  RealMatrix f;  // 2n x n
};

enum class SubspaceKind { Isotropic, Coisotropic, Lagrangian, Symplectic, None };

struct Classification {
  SubspaceKind kind = SubspaceKind::None;
  bool isotropic = false;
  bool coisotropic = false;
  bool symplectic = false;
};

struct Compatibility {
  bool compatible = false;
  bool positive = false;
  /// G(u, v) = Omega(u, J v).
  RealMatrix metric;
};

std::string to_string(SubspaceKind kind);

/// Omega(e_i, f_j) = delta_ij in the ordered basis (e_1..e_n, f_1..f_n).
SymplecticForm standard_form(int n);
/// Omega = sum dp_j ^ dx^j in phase-space order (x1..xn, p1..pn); equals
/// -standard_form(n). With it the complex structure [[0, I], [-I, 0]] is
/// compatible and positive with metric equal to the identity.
SymplecticForm cotangent_form(int n);
/// The complex structure [[0, I], [-I, 0]].
ComplexStructure standard_complex_structure(int n);

/// Symplectic Gram-Schmidt with largest-pivot selection.
DarbouxBasis darboux_basis(const SymplecticForm& omega);

Subspace symplectic_complement(const SymplecticForm& omega, const Subspace& y);
Classification classify_subspace(const SymplecticForm& omega, const Subspace& y);
Compatibility check_compatible_positive(const SymplecticForm& omega, const ComplexStructure& j);

/// Basis {v_k - i J v_k} of the +i eigenspace of J.
ComplexSubspace plus_i_eigenspace(const ComplexStructure& j);

/// h(u, v) = -i Omega(u, conj v) restricted to F, as a matrix antilinear in
/// the first argument. Throws if F is not Lagrangian or F meets its conjugate.
HermitianForm hermitian_form_on_F(const SymplecticForm& omega, const ComplexSubspace& f);

/// The complex structure that acts as +i on F and -i on conj(F).
ComplexStructure complex_structure_from(const ComplexSubspace& f);

/// Spectral-norm distance between orthogonal projectors.
double projector_distance(const Subspace& a, const Subspace& b);
double projector_distance(const ComplexSubspace& a, const ComplexSubspace& b);

/// Residual max |Omega(e_i,e_j)|, |Omega(f_i,f_j)|, |Omega(e_i,f_j) - delta_ij|.
double darboux_residual(const SymplecticForm& omega, const DarbouxBasis& basis);

}  // namespace gq::symplin

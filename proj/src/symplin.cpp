#include "gq/symplin.hpp"

#include <stdexcept>

namespace gq::symplin {

namespace {

constexpr double kRankTol = 1e-10;

template <class Matrix>
int numerical_rank(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > kRankTol * s(0)) ++r;
  }
  return r;
}

template <class Matrix>
Matrix orthonormal_columns(const Matrix& a) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

// Basis of {v : a v = 0}.
RealMatrix null_space(const RealMatrix& a, int cols) {
  if (a.rows() == 0) return RealMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const int r = numerical_rank(a);
  return svd.matrixV().rightCols(cols - r);
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

SymplecticForm::SymplecticForm(RealMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0 || matrix_.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic form must be a square matrix of even positive size");
  }
  if (max_abs(RealMatrix(matrix_ + matrix_.transpose())) > 1e-12 * std::max(1.0, max_abs(matrix_))) {
    throw std::invalid_argument("symplectic form must be antisymmetric");
  }
  matrix_ = 0.5 * (matrix_ - matrix_.transpose()).eval();
  if (std::abs(matrix_.determinant()) <= 1e-10) throw std::invalid_argument("symplectic form is degenerate");
}

std::complex<double> SymplecticForm::operator()(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  return (u.transpose() * matrix_.cast<std::complex<double>>() * v)(0, 0);
}

ComplexStructure::ComplexStructure(RealMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0) {
    throw std::invalid_argument("complex structure must be square of even size");
  }
  const RealMatrix r = matrix_ * matrix_ + RealMatrix::Identity(matrix_.rows(), matrix_.cols());
  if (max_abs(r) > 1e-10) throw std::invalid_argument("J^2 != -Id");
}

Subspace::Subspace(int ambient_dim, RealMatrix basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_dim) throw std::invalid_argument("subspace basis has wrong vector length");
  if (numerical_rank(basis_) != basis_.cols()) throw std::invalid_argument("subspace basis is not linearly independent");
}

RealMatrix Subspace::projector() const {
  const RealMatrix q = orthonormal_columns(basis_);
  return q * q.transpose();
}

ComplexSubspace::ComplexSubspace(ComplexMatrix basis) : basis_(std::move(basis)) {
  if (numerical_rank(basis_) != basis_.cols()) throw std::invalid_argument("subspace basis is not linearly independent");
}

ComplexMatrix ComplexSubspace::projector() const {
  const ComplexMatrix q = orthonormal_columns(basis_);
  return q * q.adjoint();
}

std::string to_string(SubspaceKind kind) {
  switch (kind) {
    case SubspaceKind::Isotropic: return "isotropic";
    case SubspaceKind::Coisotropic: return "coisotropic";
    case SubspaceKind::Lagrangian: return "lagrangian";
    case SubspaceKind::Symplectic: return "symplectic";
    case SubspaceKind::None: return "none";
  }
  return "none";
}

SymplecticForm standard_form(int n) {
  if (n < 1) throw std::invalid_argument("standard_form: n >= 1");
  RealMatrix m = RealMatrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  m.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return SymplecticForm(m);
}

SymplecticForm cotangent_form(int n) { return SymplecticForm(-standard_form(n).matrix()); }

ComplexStructure standard_complex_structure(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return ComplexStructure(j);
}

DarbouxBasis darboux_basis(const SymplecticForm& omega) {
  const RealMatrix& m = omega.matrix();
  const int dim = omega.dim();
  const int n = omega.half_dim();
  DarbouxBasis out{RealMatrix(dim, n), RealMatrix(dim, n)};
  RealMatrix candidates = RealMatrix::Identity(dim, dim);
  const double scale = m.cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k) {
    const RealMatrix pairing = candidates.transpose() * m * candidates;
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    const double pivot = pairing.cwiseAbs().maxCoeff(&i, &j);
    if (pivot <= kRankTol * scale) throw std::domain_error("darboux_basis: degenerate form");
    const Eigen::VectorXd e = candidates.col(i);
    const Eigen::VectorXd f = candidates.col(j) / pairing(i, j);
    out.e.col(k) = e;
    out.f.col(k) = f;

    // Remove e and f, then project the rest onto the symplectic complement of span{e, f}.
    RealMatrix rest(dim, candidates.cols() - 2);
    for (Eigen::Index c = 0, r = 0; c < candidates.cols(); ++c) {
      if (c == i || c == j) continue;
      Eigen::VectorXd v = candidates.col(c);
      v += omega(v, e) * f - omega(v, f) * e;
      rest.col(r++) = v;
    }
    candidates = orthonormal_columns(rest);
  }
  return out;
}

double darboux_residual(const SymplecticForm& omega, const DarbouxBasis& basis) {
  const RealMatrix& m = omega.matrix();
  const RealMatrix ee = basis.e.transpose() * m * basis.e;
  const RealMatrix ff = basis.f.transpose() * m * basis.f;
  const RealMatrix ef = basis.e.transpose() * m * basis.f - RealMatrix::Identity(basis.e.cols(), basis.f.cols());
  return std::max({max_abs(ee), max_abs(ff), max_abs(ef)});
}

Subspace symplectic_complement(const SymplecticForm& omega, const Subspace& y) {
  if (y.dim() == 0) return Subspace::full(omega.dim());
  const RealMatrix constraints = (omega.matrix() * y.basis()).transpose();
  return Subspace(omega.dim(), null_space(constraints, omega.dim()));
}

Classification classify_subspace(const SymplecticForm& omega, const Subspace& y) {
  const RealMatrix& m = omega.matrix();
  const double tol = kRankTol * m.cwiseAbs().maxCoeff();
  const RealMatrix q = orthonormal_columns(y.basis());
  const Subspace perp = symplectic_complement(omega, y);
  const RealMatrix qp = orthonormal_columns(perp.basis());

  Classification c;
  c.isotropic = max_abs(RealMatrix(q.transpose() * m * q)) <= tol;
  const RealMatrix outside = qp - q * (q.transpose() * qp);
  c.coisotropic = max_abs(outside) <= 1e-10;
  c.symplectic = y.dim() == 0 || numerical_rank(RealMatrix(q.transpose() * m * q)) == y.dim();

  if (c.isotropic && y.dim() == omega.half_dim()) {
    c.kind = SubspaceKind::Lagrangian;
  } else if (c.isotropic) {
    c.kind = SubspaceKind::Isotropic;
  } else if (c.symplectic) {
    c.kind = SubspaceKind::Symplectic;
  } else if (c.coisotropic) {
    c.kind = SubspaceKind::Coisotropic;
  }
  return c;
}

Compatibility check_compatible_positive(const SymplecticForm& omega, const ComplexStructure& j) {
  if (omega.dim() != j.dim()) throw std::invalid_argument("dimension mismatch between form and complex structure");
  const RealMatrix& m = omega.matrix();
  const RealMatrix& jm = j.matrix();
  Compatibility out;
  out.compatible = max_abs(RealMatrix(jm.transpose() * m * jm - m)) <= 1e-9;
  out.metric = m * jm;
  const RealMatrix sym = 0.5 * (out.metric + out.metric.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym);
  out.positive = eig.eigenvalues().minCoeff() > 1e-9;
  return out;
}

ComplexSubspace plus_i_eigenspace(const ComplexStructure& j) {
  const int dim = j.dim();
  const int n = dim / 2;
  const std::complex<double> i(0.0, 1.0);
  ComplexMatrix basis(dim, 0);
  for (int k = 0; k < dim && basis.cols() < n; ++k) {
    const Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, k);
    const Eigen::VectorXcd w = v.cast<std::complex<double>>() - i * (j.matrix() * v).cast<std::complex<double>>();
    ComplexMatrix trial(dim, basis.cols() + 1);
    trial << basis, w;
    if (numerical_rank(trial) == trial.cols()) basis = trial;
  }
  return ComplexSubspace(basis);
}

HermitianForm hermitian_form_on_F(const SymplecticForm& omega, const ComplexSubspace& f) {
  const int n = omega.half_dim();
  const ComplexMatrix m = omega.matrix().cast<std::complex<double>>();
  const ComplexMatrix& b = f.basis();
  if (b.rows() != omega.dim()) throw std::invalid_argument("subspace lives in a different space");
  const double scale = omega.matrix().cwiseAbs().maxCoeff() * std::max(1.0, max_abs(b) * max_abs(b));
  if (f.dim() != n || max_abs(ComplexMatrix(b.transpose() * m * b)) > 1e-9 * scale) {
    throw std::domain_error("subspace is not Lagrangian in the complexification");
  }
  ComplexMatrix both(omega.dim(), 2 * n);
  both << b, b.conjugate();
  if (numerical_rank(both) != 2 * n) throw std::domain_error("subspace meets its conjugate");

  HermitianForm h;
  h.matrix = std::complex<double>(0.0, 1.0) * (b.adjoint() * m * b);
  h.hermiticity_residual = max_abs(ComplexMatrix(h.matrix - h.matrix.adjoint()));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (h.matrix + h.matrix.adjoint()));
  h.positive_definite = eig.eigenvalues().minCoeff() > 1e-10 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  return h;
}

ComplexStructure complex_structure_from(const ComplexSubspace& f) {
  const ComplexMatrix& b = f.basis();
  const Eigen::Index dim = b.rows();
  const Eigen::Index n = b.cols();
  if (2 * n != dim) throw std::invalid_argument("subspace must have half the ambient dimension");
  ComplexMatrix t(dim, dim);
  t << b, b.conjugate();
  Eigen::VectorXcd d(dim);
  d.head(n).setConstant(std::complex<double>(0.0, 1.0));
  d.tail(n).setConstant(std::complex<double>(0.0, -1.0));
  Eigen::PartialPivLU<ComplexMatrix> lu(t);
  const ComplexMatrix j = t * d.asDiagonal() * lu.inverse();
  if (max_abs(RealMatrix(j.imag())) > 1e-8) throw std::domain_error("subspace does not define a real complex structure");
  return ComplexStructure(j.real());
}

double projector_distance(const Subspace& a, const Subspace& b) {
  const RealMatrix d = a.projector() - b.projector();
  if (d.size() == 0) return 0.0;
  return Eigen::JacobiSVD<RealMatrix>(d).singularValues()(0);
}

double projector_distance(const ComplexSubspace& a, const ComplexSubspace& b) {
  const ComplexMatrix d = a.projector() - b.projector();
  if (d.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(d).singularValues()(0);
}

}  // namespace gq::symplin

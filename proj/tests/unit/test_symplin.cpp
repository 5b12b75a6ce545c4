#include <doctest.h>

#include <random>

#include "gq/symplin.hpp"

using namespace gq::symplin;

namespace {

Subspace span(int dim, std::initializer_list<int> axes) {
  RealMatrix b = RealMatrix::Zero(dim, static_cast<int>(axes.size()));
  int c = 0;
  for (int a : axes) b(a, c++) = 1.0;
  return Subspace(dim, b);
}

}  // namespace

TEST_CASE("standard form") {
  const auto w1 = standard_form(1).matrix();
  CHECK(w1(0, 1) == 1.0);
  CHECK(w1(1, 0) == -1.0);
  const auto w2 = standard_form(2);
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(4, 0), e2 = Eigen::VectorXd::Unit(4, 1);
  Eigen::VectorXd f1 = Eigen::VectorXd::Unit(4, 2), f2 = Eigen::VectorXd::Unit(4, 3);
  CHECK(w2(e1, f1) == 1.0);
  CHECK(w2(e2, f2) == 1.0);
  CHECK(w2(e1, f2) == 0.0);
  CHECK(w2(e1, e2) == 0.0);
  CHECK(w2(f1, f2) == 0.0);
}

TEST_CASE("Darboux basis") {
  CHECK(darboux_residual(standard_form(1), darboux_basis(standard_form(1))) < 1e-14);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  RealMatrix a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = n(rng);
  const SymplecticForm w(RealMatrix(a - a.transpose()));
  CHECK(darboux_residual(w, darboux_basis(w)) < 1e-10);
  const SymplecticForm w2(RealMatrix(2.0 * standard_form(2).matrix()));
  CHECK(darboux_residual(w2, darboux_basis(w2)) < 1e-12);
}

TEST_CASE("forms are validated") {
  CHECK_THROWS(SymplecticForm(RealMatrix::Identity(2, 2)));
  CHECK_THROWS(SymplecticForm(RealMatrix::Zero(2, 2)));
}

TEST_CASE("symplectic complement and classification") {
  const auto w1 = standard_form(1);
  const auto y = span(2, {0});
  CHECK(projector_distance(symplectic_complement(w1, y), y) < 1e-12);
  CHECK(symplectic_complement(w1, Subspace::full(2)).dim() == 0);
  CHECK(symplectic_complement(w1, Subspace::zero(2)).dim() == 2);
  CHECK(classify_subspace(w1, y).kind == SubspaceKind::Lagrangian);

  const auto w2 = standard_form(2);
  const auto line = span(4, {1});
  CHECK(classify_subspace(w2, line).isotropic);
  CHECK(classify_subspace(w2, symplectic_complement(w2, line)).coisotropic);
  CHECK(classify_subspace(w2, span(4, {0, 2})).kind == SubspaceKind::Symplectic);
  CHECK(classify_subspace(w2, span(4, {0, 1, 2})).kind == SubspaceKind::Coisotropic);
  CHECK(to_string(SubspaceKind::Lagrangian) == "lagrangian");
}

TEST_CASE("compatible complex structures") {
  const auto c = check_compatible_positive(cotangent_form(2), standard_complex_structure(2));
  CHECK(c.compatible);
  CHECK(c.positive);
  CHECK((c.metric - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  const auto f = plus_i_eigenspace(standard_complex_structure(1));
  REQUIRE(f.dim() == 1);
  const auto v = f.basis().col(0);
  CHECK(std::abs(v(1) / v(0) - std::complex<double>(0, 1)) < 1e-12);
  CHECK(hermitian_form_on_F(cotangent_form(1), f).positive_definite);
  const auto hbar = hermitian_form_on_F(cotangent_form(1), f.conjugate());
  CHECK(!hbar.positive_definite);
  CHECK(hbar.matrix(0, 0).real() < 0);
  const auto back = complex_structure_from(f);
  CHECK((back.matrix() - standard_complex_structure(1).matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

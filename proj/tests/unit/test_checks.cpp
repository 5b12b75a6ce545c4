#include <doctest.h>

#include "gq/checks.hpp"

using namespace gq;

TEST_CASE("every suite passes with the default seed") {
  for (const auto& name : suite_names()) {
    CheckOptions o;
    const CheckReport r = run_check(name, o);
    CHECK_MESSAGE(r.passed(), name);
    CHECK(!r.items.empty());
  }
  CHECK_THROWS(run_check("nonsense", CheckOptions{}));
}

TEST_CASE("a corrupted connection fails the curvature suite") {
  CheckOptions o;
  o.theta = "2*p1 dx1";
  const CheckReport r = check_curvature(o);
  CHECK(!r.passed());
  bool nonzero = false;
  for (const auto& i : r.items) nonzero = nonzero || (!i.passed && i.residual > 1e-3);
  CHECK(nonzero);
}

TEST_CASE("reports serialize") {
  CheckOptions o;
  o.seed = 7;
  const CheckReport r = check_liouville(o);
  CHECK(r.to_json().find("\"suite\": \"liouville\"") != std::string::npos);
  CHECK(r.to_csv().rfind("suite,name,", 0) == 0);
}

TEST_CASE("relative residual") {
  CHECK(relative_residual(1e-3, {1000.0, 1.0}) == doctest::Approx(1e-3 / 1002.0));
  CHECK(relative_residual(0.5, {0.0}) == doctest::Approx(0.5));
}

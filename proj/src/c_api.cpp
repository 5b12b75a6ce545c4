#include "gq/gq.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gq/checks.hpp"
#include "gq/expr.hpp"
#include "gq/mech.hpp"
#include "gq/polarize.hpp"
#include "gq/prequant.hpp"
#include "gq/symplin.hpp"

struct gq_space {
  gq::PhaseSpace space;
  std::vector<std::string> params;
};

struct gq_expr {
  gq::Expr expr;
  gq::PhaseSpace space;
};

struct gq_trajectory {
  gq::Trajectory traj;
  gq::PhaseSpace space;
  gq::Expr hamiltonian;
};

namespace {

thread_local std::string g_error;
thread_local long g_error_offset = -1;

gq_status fail(gq_status code, const std::string& message, long offset = -1) {
  g_error = message;
  g_error_offset = offset;
  return code;
}

template <class F>
gq_status guarded(F&& body) {
  g_error.clear();
  g_error_offset = -1;
  try {
    return body();
  } catch (const gq::ParseError& e) {
    return fail(GQ_ERR_PARSE, e.what(), static_cast<long>(e.offset()));
  } catch (const nlohmann::json::exception& e) {
    return fail(GQ_ERR_PARSE, e.what());
  } catch (const gq::IntegrationError& e) {
    return fail(GQ_ERR_NUMERICAL, e.what());
  } catch (const gq::QuadratureError& e) {
    return fail(GQ_ERR_NUMERICAL, e.what());
  } catch (const gq::DivergenceError& e) {
    return fail(GQ_ERR_NUMERICAL, e.what());
  } catch (const gq::EvalError& e) {
    return fail(GQ_ERR_NUMERICAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GQ_ERR_USAGE, e.what());
  } catch (const std::domain_error& e) {
    return fail(GQ_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(GQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GQ_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define GQ_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(GQ_ERR_USAGE, msg); \
  } while (0)

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

extern "C" {

const char* gq_last_error(void) { return g_error.c_str(); }
long gq_last_error_offset(void) { return g_error_offset; }
void gq_string_free(char* s) { std::free(s); }
const char* gq_version(void) { return "1.0.0"; }

gq_status gq_space_create(int dof, double hbar, double mass, gq_space** out) {
  return guarded([&] {
    GQ_REQUIRE(out != nullptr, "gq_space_create: null output");
    *out = new gq_space{gq::PhaseSpace(dof, hbar, mass), {}};
    return GQ_OK;
  });
}

void gq_space_destroy(gq_space* space) { delete space; }

gq_status gq_space_set_param(gq_space* space, const char* name, double value) {
  return guarded([&] {
    GQ_REQUIRE(space != nullptr && name != nullptr, "gq_space_set_param: null argument");
    space->space.set_parameter(name, value);
    const std::string n(name);
    if (n != "hbar" && n != "m" && std::find(space->params.begin(), space->params.end(), n) == space->params.end()) {
      space->params.push_back(n);
    }
    return GQ_OK;
  });
}

gq_status gq_expr_parse(const gq_space* space, const char* text, gq_expr** out) {
  return guarded([&] {
    GQ_REQUIRE(space != nullptr && text != nullptr && out != nullptr, "gq_expr_parse: null argument");
    gq::Expr e = gq::parse(text, space->space, space->params);
    *out = new gq_expr{std::move(e), space->space};
    return GQ_OK;
  });
}

void gq_expr_destroy(gq_expr* expr) { delete expr; }

gq_status gq_expr_to_string(const gq_expr* expr, char** out) {
  return guarded([&] {
    GQ_REQUIRE(expr != nullptr && out != nullptr, "gq_expr_to_string: null argument");
    *out = dup(expr->expr.str());
    return GQ_OK;
  });
}

gq_status gq_expr_eval(const gq_expr* expr, const double* point, size_t len, double* re, double* im) {
  return guarded([&] {
    GQ_REQUIRE(expr != nullptr && point != nullptr && re != nullptr && im != nullptr, "gq_expr_eval: null argument");
    GQ_REQUIRE(len == static_cast<size_t>(expr->space.dim()), "gq_expr_eval: point has the wrong length");
    const gq::Complex v = gq::evaluate(expr->expr, std::span<const double>(point, len), expr->space.bindings());
    *re = v.real();
    *im = v.imag();
    return GQ_OK;
  });
}

gq_status gq_poisson_bracket(const gq_expr* f, const gq_expr* g, gq_expr** out) {
  return guarded([&] {
    GQ_REQUIRE(f != nullptr && g != nullptr && out != nullptr, "gq_poisson_bracket: null argument");
    GQ_REQUIRE(f->space.dof() == g->space.dof(), "gq_poisson_bracket: expressions live on different spaces");
    *out = new gq_expr{gq::poisson_bracket(f->expr, g->expr, f->space), f->space};
    return GQ_OK;
  });
}

gq_status gq_flow(const gq_expr* hamiltonian, const double* state0, size_t len, double t_end, double dt,
                  gq_trajectory** out) {
  return guarded([&] {
    GQ_REQUIRE(hamiltonian != nullptr && state0 != nullptr && out != nullptr, "gq_flow: null argument");
    GQ_REQUIRE(len == static_cast<size_t>(hamiltonian->space.dim()), "gq_flow: state has the wrong length");
    gq::Trajectory t = gq::flow(hamiltonian->expr, hamiltonian->space, std::span<const double>(state0, len), t_end, dt);
    *out = new gq_trajectory{std::move(t), hamiltonian->space, hamiltonian->expr};
    return GQ_OK;
  });
}

void gq_trajectory_destroy(gq_trajectory* traj) { delete traj; }

gq_status gq_trajectory_write(const gq_trajectory* traj, gq_format format, char** out) {
  return guarded([&] {
    GQ_REQUIRE(traj != nullptr && out != nullptr, "gq_trajectory_write: null argument");
    *out = dup(format == GQ_FORMAT_CSV ? gq::trajectory_csv(traj->traj, traj->space)
                                       : gq::trajectory_json(traj->traj, traj->space));
    return GQ_OK;
  });
}

gq_status gq_trajectory_size(const gq_trajectory* traj, size_t* steps, size_t* dim) {
  return guarded([&] {
    GQ_REQUIRE(traj != nullptr && steps != nullptr && dim != nullptr, "gq_trajectory_size: null argument");
    *steps = traj->traj.times.size();
    *dim = static_cast<size_t>(traj->space.dim());
    return GQ_OK;
  });
}

gq_status gq_trajectory_final_state(const gq_trajectory* traj, double* state, size_t len) {
  return guarded([&] {
    GQ_REQUIRE(traj != nullptr && state != nullptr, "gq_trajectory_final_state: null argument");
    GQ_REQUIRE(len == static_cast<size_t>(traj->space.dim()), "gq_trajectory_final_state: wrong length");
    const auto& last = traj->traj.states.back();
    std::copy(last.begin(), last.end(), state);
    return GQ_OK;
  });
}

gq_status gq_trajectory_energy_drift(const gq_trajectory* traj, double* drift) {
  return guarded([&] {
    GQ_REQUIRE(traj != nullptr && drift != nullptr, "gq_trajectory_energy_drift: null argument");
    *drift = gq::max_energy_drift(traj->traj, traj->hamiltonian, traj->space);
    return GQ_OK;
  });
}

gq_status gq_check_run(const gq_space* space, const char* suite, uint64_t seed, const char* theta, gq_format format,
                       char** report, int* passed) {
  return guarded([&] {
    GQ_REQUIRE(space != nullptr && suite != nullptr && report != nullptr && passed != nullptr,
               "gq_check_run: null argument");
    gq::CheckOptions o;
    o.seed = seed;
    o.hbar = space->space.hbar();
    if (theta != nullptr) {
      o.theta = theta;
      // Validate the one-form up front so syntax errors surface as parse errors.
      (void)gq::parse_one_form(theta, space->space);
      o.dof = space->space.dof();
    }
    const gq::CheckReport r = gq::run_check(suite, o);
    *report = dup(format == GQ_FORMAT_CSV ? r.to_csv() : r.to_json());
    *passed = r.passed() ? 1 : 0;
    return GQ_OK;
  });
}

gq_status gq_spectrum(const char* kind, int k_max, double hbar, gq_format format, char** out) {
  return guarded([&] {
    GQ_REQUIRE(kind != nullptr && out != nullptr, "gq_spectrum: null argument");
    GQ_REQUIRE(k_max >= 0, "gq_spectrum: K must be non-negative");
    GQ_REQUIRE(hbar > 0.0, "gq_spectrum: hbar must be positive");
    const std::string k(kind);
    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<double> expected;
    nlohmann::ordered_json j;
    j["space"] = k;
    j["K"] = k_max;
    j["hbar"] = hbar;
    if (k == "prequantum-ho") {
      if (k_max == 0) {
        labels.push_back("n=0");
        values.push_back(0.0);
        expected.push_back(0.0);
      } else {
        for (const auto& m : gq::prequantum_ho_spectrum(k_max, hbar)) {
          labels.push_back("n=" + std::to_string(m.mode));
          values.push_back(m.eigenvalue);
          expected.push_back(m.mode * hbar);
        }
      }
    } else if (k == "bargmann") {
      const gq::CrossCheck c = gq::bargmann_vs_prequant_crosscheck(k_max, hbar);
      double max_imag = 0.0;
      for (std::size_t i = 0; i < c.eigenvalues.size(); ++i) {
        labels.push_back("k=" + std::to_string(i));
        values.push_back(c.eigenvalues[i].real());
        expected.push_back(static_cast<double>(i) * hbar);
        max_imag = std::max(max_imag, std::abs(c.eigenvalues[i].imag()));
      }
      j["matrix_discrepancy"] = c.discrepancy;
      j["max_imaginary_part"] = max_imag;
      j["operator"] = nlohmann::ordered_json::parse(gq::to_json(c.matrix));
    } else {
      return fail(GQ_ERR_USAGE, "gq_spectrum: unknown space '" + k + "' (expected prequantum-ho or bargmann)");
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) dev = std::max(dev, std::abs(values[i] - expected[i]));
    if (format == GQ_FORMAT_CSV) {
      std::string s = "label,eigenvalue,expected\n";
      for (std::size_t i = 0; i < values.size(); ++i) {
        s += labels[i] + "," + csv_number(values[i]) + "," + csv_number(expected[i]) + "\n";
      }
      *out = dup(s);
      return GQ_OK;
    }
    j["labels"] = labels;
    j["eigenvalues"] = values;
    j["expected"] = expected;
    j["max_deviation"] = dev;
    *out = dup(j.dump(2));
    return GQ_OK;
  });
}

gq_status gq_prequantize(const gq_space* space, const char* f, const char* section, const char* theta, char** out) {
  return guarded([&] {
    GQ_REQUIRE(space != nullptr && f != nullptr && section != nullptr && out != nullptr,
               "gq_prequantize: null argument");
    const gq::Expr fe = gq::parse(f, space->space, space->params);
    const gq::Expr se = gq::parse(section, space->space, space->params);
    const gq::ConnectionForm form = gq::parse_one_form(theta != nullptr ? theta : "theta", space->space);
    const gq::PrequantumOperator q(fe, form, space->space);
    nlohmann::ordered_json j;
    j["f"] = fe.str();
    j["section"] = se.str();
    j["theta"] = form.str();
    j["hbar"] = space->space.hbar();
    j["hamiltonian_vector_field"] = gq::to_string(q.field());
    j["result"] = q(se).str();
    *out = dup(j.dump(2));
    return GQ_OK;
  });
}

gq_status gq_classify(const char* form_json, const char* subspace_json, char** out) {
  return guarded([&] {
    GQ_REQUIRE(form_json != nullptr && subspace_json != nullptr && out != nullptr, "gq_classify: null argument");
    auto to_matrix = [](const nlohmann::json& rows, const char* what) {
      if (!rows.is_array() || rows.empty()) throw std::invalid_argument(std::string(what) + " must be a non-empty array of rows");
      const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
      Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != cols) throw std::invalid_argument(std::string(what) + " rows differ in length");
        for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
      }
      return m;
    };
    const gq::symplin::SymplecticForm omega(to_matrix(nlohmann::json::parse(form_json), "form"));
    const Eigen::MatrixXd basis = to_matrix(nlohmann::json::parse(subspace_json), "subspace");
    GQ_REQUIRE(basis.rows() == omega.dim(), "gq_classify: subspace rows must match the form dimension");
    const gq::symplin::Subspace y(omega.dim(), basis);
    const auto c = gq::symplin::classify_subspace(omega, y);
    const auto comp = gq::symplin::symplectic_complement(omega, y);
    nlohmann::ordered_json j;
    j["kind"] = gq::symplin::to_string(c.kind);
    j["dim"] = y.dim();
    j["ambient_dim"] = omega.dim();
    j["isotropic"] = c.isotropic;
    j["coisotropic"] = c.coisotropic;
    j["symplectic"] = c.symplectic;
    j["lagrangian"] = c.kind == gq::symplin::SubspaceKind::Lagrangian;
    j["complement_dim"] = comp.dim();
    *out = dup(j.dump(2));
    return GQ_OK;
  });
}

}  // extern "C"

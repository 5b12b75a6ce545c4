// gq: command-line front end over the gquant C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gq/gq.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kCheckFailed = 3, kNumerical = 4 };

struct Settings {
  int n = 1;
  double hbar = 1.0;
  double mass = 1.0;
  std::vector<std::string> params;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 42;
};

int exit_code(gq_status s) {
  switch (s) {
    case GQ_OK: return kOk;
    case GQ_ERR_USAGE: return kUsage;
    case GQ_ERR_PARSE: return kParse;
    case GQ_ERR_CHECK_FAILED: return kCheckFailed;
    default: return kNumerical;
  }
}

// Reports a failed call and returns the matching exit code.
int report(gq_status s, const std::string& input = {}) {
  std::cerr << "error: " << gq_last_error() << '\n';
  const long off = gq_last_error_offset();
  if (s == GQ_ERR_PARSE && off >= 0 && !input.empty()) {
    std::cerr << "  " << input << "\n  " << std::string(static_cast<std::size_t>(off), ' ') << "^ (offset " << off
              << ")\n";
  }
  return exit_code(s);
}

struct Owned {
  char* s = nullptr;
  ~Owned() { gq_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

using SpacePtr = std::unique_ptr<gq_space, decltype(&gq_space_destroy)>;
using ExprPtr = std::unique_ptr<gq_expr, decltype(&gq_expr_destroy)>;
using TrajPtr = std::unique_ptr<gq_trajectory, decltype(&gq_trajectory_destroy)>;

gq_format format_of(const Settings& s) { return s.format == "csv" ? GQ_FORMAT_CSV : GQ_FORMAT_JSON; }

int emit(const Settings& s, const std::string& text) {
  if (s.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return kOk;
  }
  std::ofstream f(s.output, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << s.output << " for writing\n";
    return kUsage;
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  return kOk;
}

int make_space(const Settings& s, SpacePtr& out) {
  gq_space* raw = nullptr;
  if (gq_status st = gq_space_create(s.n, s.hbar, s.mass, &raw); st != GQ_OK) return report(st);
  out.reset(raw);
  for (const std::string& kv : s.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --param expects name=value, got '" << kv << "'\n";
      return kUsage;
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      std::cerr << "error: --param value is not a number in '" << kv << "'\n";
      return kUsage;
    }
    if (gq_status st = gq_space_set_param(out.get(), kv.substr(0, eq).c_str(), v); st != GQ_OK) return report(st);
  }
  return kOk;
}

int parse_expr(gq_space* space, const std::string& text, ExprPtr& out) {
  gq_expr* raw = nullptr;
  if (gq_status st = gq_expr_parse(space, text.c_str(), &raw); st != GQ_OK) return report(st, text);
  out.reset(raw);
  return kOk;
}

std::string coordinate_name(int slot, int n) {
  return (slot < n ? "x" : "p") + std::to_string(slot % n + 1);
}

// Commands -----------------------------------------------------------------------

int cmd_bracket(const Settings& s, const std::string& f, const std::string& g) {
  SpacePtr space(nullptr, gq_space_destroy);
  if (int rc = make_space(s, space)) return rc;
  ExprPtr fe(nullptr, gq_expr_destroy), ge(nullptr, gq_expr_destroy), be(nullptr, gq_expr_destroy);
  if (int rc = parse_expr(space.get(), f, fe)) return rc;
  if (int rc = parse_expr(space.get(), g, ge)) return rc;
  gq_expr* raw = nullptr;
  if (gq_status st = gq_poisson_bracket(fe.get(), ge.get(), &raw); st != GQ_OK) return report(st);
  be.reset(raw);
  Owned text;
  if (gq_status st = gq_expr_to_string(be.get(), &text.s); st != GQ_OK) return report(st);

  const int dim = 2 * s.n;
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<std::vector<double>> pts(5, std::vector<double>(static_cast<std::size_t>(dim)));
  std::vector<std::pair<double, double>> vals;
  for (auto& p : pts) {
    for (double& v : p) v = dist(rng);
    double re = 0.0, im = 0.0;
    if (gq_status st = gq_expr_eval(be.get(), p.data(), p.size(), &re, &im); st != GQ_OK) return report(st);
    vals.emplace_back(re, im);
  }

  if (s.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    for (int k = 0; k < dim; ++k) os << coordinate_name(k, s.n) << ',';
    os << "re,im\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (double v : pts[i]) os << v << ',';
      os << vals[i].first << ',' << vals[i].second << '\n';
    }
    return emit(s, os.str());
  }
  nlohmann::ordered_json j;
  j["f"] = f;
  j["g"] = g;
  j["bracket"] = text.str();
  std::vector<std::string> cols;
  for (int k = 0; k < dim; ++k) cols.push_back(coordinate_name(k, s.n));
  j["columns"] = cols;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    nlohmann::ordered_json r;
    r["point"] = pts[i];
    r["re"] = vals[i].first;
    r["im"] = vals[i].second;
    rows.push_back(r);
  }
  j["samples"] = rows;
  return emit(s, j.dump(2));
}

int cmd_flow(const Settings& s, const std::string& h, const std::vector<double>& state, double t_end, double dt) {
  SpacePtr space(nullptr, gq_space_destroy);
  if (int rc = make_space(s, space)) return rc;
  ExprPtr he(nullptr, gq_expr_destroy);
  if (int rc = parse_expr(space.get(), h, he)) return rc;
  if (state.size() != static_cast<std::size_t>(2 * s.n)) {
    std::cerr << "error: --state needs " << 2 * s.n << " values (x1..xn, p1..pn)\n";
    return kUsage;
  }
  gq_trajectory* raw = nullptr;
  if (gq_status st = gq_flow(he.get(), state.data(), state.size(), t_end, dt, &raw); st != GQ_OK) return report(st);
  TrajPtr traj(raw, gq_trajectory_destroy);
  Owned text;
  if (gq_status st = gq_trajectory_write(traj.get(), format_of(s), &text.s); st != GQ_OK) return report(st);
  double drift = 0.0;
  if (gq_status st = gq_trajectory_energy_drift(traj.get(), &drift); st != GQ_OK) return report(st);
  std::size_t steps = 0, dim = 0;
  gq_trajectory_size(traj.get(), &steps, &dim);
  std::vector<double> last(dim);
  gq_trajectory_final_state(traj.get(), last.data(), last.size());

  if (int rc = emit(s, text.str())) return rc;
  nlohmann::ordered_json summary;
  summary["samples"] = steps;
  summary["t_end"] = t_end;
  summary["dt"] = dt;
  summary["final_state"] = last;
  summary["max_energy_drift"] = drift;
  (s.output.empty() ? std::cerr : std::cout) << "summary " << summary.dump() << '\n';
  return kOk;
}

int cmd_check(const Settings& s, const std::string& suite, const std::string& theta) {
  SpacePtr space(nullptr, gq_space_destroy);
  if (int rc = make_space(s, space)) return rc;
  Owned text;
  int passed = 0;
  gq_status st = gq_check_run(space.get(), suite.c_str(), s.seed, theta.empty() ? nullptr : theta.c_str(), format_of(s),
                              &text.s, &passed);
  if (st != GQ_OK) return report(st, theta);
  if (int rc = emit(s, text.str())) return rc;
  if (!passed) {
    std::cerr << "check " << suite << ": FAILED\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_spectrum(const Settings& s, const std::string& kind, int k_max) {
  Owned text;
  if (gq_status st = gq_spectrum(kind.c_str(), k_max, s.hbar, format_of(s), &text.s); st != GQ_OK) return report(st);
  return emit(s, text.str());
}

int cmd_prequantize(const Settings& s, const std::string& f, const std::string& section, const std::string& theta) {
  SpacePtr space(nullptr, gq_space_destroy);
  if (int rc = make_space(s, space)) return rc;
  Owned text;
  gq_status st = gq_prequantize(space.get(), f.c_str(), section.c_str(), theta.c_str(), &text.s);
  if (st != GQ_OK) {
    // The offset refers to whichever input failed; show the most likely one.
    return report(st, theta != "theta" && theta != "theta-tilde" ? theta : f);
  }
  return emit(s, text.str());
}

int cmd_classify(const Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << '\n';
    return kUsage;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return kParse;
  }
  if (!doc.is_object() || !doc.contains("subspace")) {
    std::cerr << "error: " << path << " must be an object with a \"subspace\" matrix (and optionally \"form\")\n";
    return kUsage;
  }
  nlohmann::json form;
  if (doc.contains("form")) {
    form = doc["form"];
  } else {
    // Omega = sum dp_j ^ dx^j in (x1..xn, p1..pn) order.
    const std::size_t dim = doc["subspace"].size();
    const std::size_t n = dim / 2;
    form = nlohmann::json::array();
    for (std::size_t r = 0; r < dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < dim; ++c) row.push_back(r < n && c == r + n ? -1.0 : (r >= n && c + n == r ? 1.0 : 0.0));
      form.push_back(row);
    }
  }
  Owned text;
  gq_status st = gq_classify(form.dump().c_str(), doc["subspace"].dump().c_str(), &text.s);
  if (st != GQ_OK) return report(st);
  if (s.format == "csv") {
    const auto j = nlohmann::json::parse(text.str());
    std::ostringstream os;
    os << "kind,dim,ambient_dim,isotropic,coisotropic,symplectic,lagrangian,complement_dim\n";
    os << j["kind"].get<std::string>() << ',' << j["dim"] << ',' << j["ambient_dim"] << ',' << j["isotropic"] << ','
       << j["coisotropic"] << ',' << j["symplectic"] << ',' << j["lagrangian"] << ',' << j["complement_dim"] << '\n';
    return emit(s, os.str());
  }
  return emit(s, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gq: geometric quantization toolkit on T*R^n"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");
  app.add_option("--n", s.n, "Degrees of freedom n")->check(CLI::Range(1, 16))->capture_default_str();
  app.add_option("--hbar", s.hbar, "Planck constant")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--mass", s.mass, "Particle mass m")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--param", s.params, "Named constant, name=value (repeatable)");
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--output,-o", s.output, "Write the result to this file instead of stdout");
  app.add_option("--seed", s.seed, "Seed for sampled points and random checks")->capture_default_str();

  std::string f, g;
  auto* bracket = app.add_subcommand("bracket", "Poisson bracket {f, g} with a 5-point evaluation table");
  bracket->add_option("f", f, "First observable")->required();
  bracket->add_option("g", g, "Second observable")->required();

  std::string h;
  std::vector<double> state;
  double t_end = 1.0, dt = 1e-3;
  auto* flow = app.add_subcommand("flow", "Integrate Hamilton's equations (implicit midpoint)");
  flow->add_option("H", h, "Hamiltonian")->required();
  flow->add_option("--state", state, "Initial state x1..xn p1..pn (comma separated)")->required()->delimiter(',');
  flow->add_option("--t-end,--t", t_end, "Final time")->check(CLI::NonNegativeNumber)->capture_default_str();
  flow->add_option("--dt", dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();

  std::string suite, theta_check;
  auto* check = app.add_subcommand("check", "Run a property suite; exit 3 if any identity fails");
  check->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"poisson", "curvature", "commutator", "liouville", "polarization"}));
  check->add_option("--theta", theta_check, "Connection one-form, e.g. \"2*p1 dx1\" or theta-tilde");

  std::string kind_pos, kind_opt;
  int k_max = 4;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the harmonic oscillator Q(H)");
  spectrum->add_option("kind", kind_pos, "prequantum-ho or bargmann");
  spectrum->add_option("--space", kind_opt, "prequantum-ho or bargmann");
  spectrum->add_option("--K", k_max, "Truncation: modes -K..K or degrees 0..K")->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::string pf, section = "1", theta_pre = "theta";
  auto* pre = app.add_subcommand("prequantize", "Apply Q(f) = -i hbar nabla_{X_f} + f to a section");
  pre->add_option("f", pf, "Observable")->required();
  pre->add_option("--section", section, "Section s(x, p)")->capture_default_str();
  pre->add_option("--theta", theta_pre, "Connection one-form")->capture_default_str();

  std::string path;
  auto* classify = app.add_subcommand("classify", "Classify a subspace of a symplectic vector space");
  classify->add_option("file", path, "JSON file {\"form\": [[...]], \"subspace\": [[...]]}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*bracket) return cmd_bracket(s, f, g);
  if (*flow) return cmd_flow(s, h, state, t_end, dt);
  if (*check) return cmd_check(s, suite, theta_check);
  if (*spectrum) {
    std::string kind = !kind_opt.empty() ? kind_opt : kind_pos;
    if (kind.empty()) {
      std::cerr << "error: spectrum needs a space (prequantum-ho or bargmann)\n";
      return kUsage;
    }
    return cmd_spectrum(s, kind, k_max);
  }
  if (*pre) return cmd_prequantize(s, pf, section, theta_pre);
  if (*classify) return cmd_classify(s, path);
  return kUsage;
}

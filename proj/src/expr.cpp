#include "gq/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <utility>

#include "expr_node.hpp"

namespace gq {

// Rational ---------------------------------------------------------------

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational operator+(Rational a, Rational b) { return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return Rational::make(a.num * b.den - b.num * a.den, a.den * b.den); }
Rational operator*(Rational a, Rational b) { return Rational::make(a.num * b.num, a.den * b.den); }

// Coordinate / PhaseSpace ----------------------------------------------

std::string Coordinate::name() const {
  return (is_position() ? "x" : "p") + std::to_string(index + 1);
}

PhaseSpace::PhaseSpace(int dof, double hbar, double mass) : dof_(dof), hbar_(hbar), mass_(mass) {
  if (dof < 1) throw std::invalid_argument("phase space needs n >= 1");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  bindings_["hbar"] = hbar;
  bindings_["m"] = mass;
}

std::vector<Coordinate> PhaseSpace::coordinates() const {
  std::vector<Coordinate> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int j = 0; j < dof_; ++j) out.push_back(Coordinate::x(j));
  for (int j = 0; j < dof_; ++j) out.push_back(Coordinate::p(j));
  return out;
}

Coordinate PhaseSpace::coordinate(int slot) const {
  if (slot < 0 || slot >= dim()) throw std::out_of_range("coordinate slot out of range");
  return slot < dof_ ? Coordinate::x(slot) : Coordinate::p(slot - dof_);
}

void PhaseSpace::set_parameter(const std::string& name, double value) {
  if (name == "hbar") {
    if (!(value > 0.0)) throw std::invalid_argument("hbar must be positive");
    hbar_ = value;
  } else if (name == "m") {
    if (!(value > 0.0)) throw std::invalid_argument("mass must be positive");
    mass_ = value;
  }
  bindings_[name] = value;
}

// Node construction ------------------------------------------------------

struct ExprFactory {
  static Expr wrap(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }
  static Expr constant(Complex v) {
    Node n;
    n.kind = NodeKind::Constant;
    n.value = v;
    return wrap(std::move(n));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprFactory::constant(0.0);
  return z;
}

bool is_kind(const Expr& e, NodeKind k) { return e.node().kind == k; }

int compare_complex(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
  if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
  return 0;
}

int compare_rational(Rational a, Rational b) {
  const std::int64_t l = a.num * b.den;
  const std::int64_t r = b.num * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

// Total order on simplified trees; used to canonicalize operand order.
int compare(const Expr& ea, const Expr& eb) {
  const Node& a = ea.node();
  const Node& b = eb.node();
  if (&a == &b) return 0;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  switch (a.kind) {
    case NodeKind::Constant:
      return compare_complex(a.value, b.value);
    case NodeKind::Parameter:
      return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case NodeKind::Coordinate:
      if (a.coord.kind != b.coord.kind) return a.coord.is_position() ? -1 : 1;
      return a.coord.index < b.coord.index ? -1 : (a.coord.index > b.coord.index ? 1 : 0);
    case NodeKind::Function:
      if (a.func != b.func) return static_cast<int>(a.func) < static_cast<int>(b.func) ? -1 : 1;
      return compare(a.args[0], b.args[0]);
    case NodeKind::Power: {
      if (int c = compare(a.args[0], b.args[0]); c != 0) return c;
      return compare_rational(a.exponent, b.exponent);
    }
    case NodeKind::Product:
    case NodeKind::Sum: {
      const std::size_t n = std::min(a.args.size(), b.args.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
      }
      if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

Complex ipow(Complex base, std::int64_t e) {
  Complex result = 1.0;
  std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e);
  while (k) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return e < 0 ? 1.0 / result : result;
}

bool positive_real(Complex v) { return v.imag() == 0.0 && v.real() > 0.0; }

Expr make_power(const Expr& base, Rational r);

Expr make_sum(const std::vector<Expr>& terms) {
  Complex c = 0.0;
  std::vector<std::pair<Expr, Complex>> parts;
  auto push = [&](const Expr& t) {
    const Node& n = t.node();
    if (n.kind == NodeKind::Constant) {
      c += n.value;
      return;
    }
    if (n.kind == NodeKind::Product && is_kind(n.args[0], NodeKind::Constant)) {
      const Complex coef = n.args[0].node().value;
      if (n.args.size() == 2) {
        parts.emplace_back(n.args[1], coef);
      } else {
        Node rest;
        rest.kind = NodeKind::Product;
        rest.args.assign(n.args.begin() + 1, n.args.end());
        parts.emplace_back(ExprFactory::wrap(std::move(rest)), coef);
      }
      return;
    }
    parts.emplace_back(t, 1.0);
  };
  for (const Expr& t : terms) {
    if (is_kind(t, NodeKind::Sum)) {
      for (const Expr& a : t.node().args) push(a);
    } else {
      push(t);
    }
  }

  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  for (std::size_t i = 0; i < parts.size();) {
    Complex coef = parts[i].second;
    std::size_t j = i + 1;
    while (j < parts.size() && compare(parts[i].first, parts[j].first) == 0) coef += parts[j++].second;
    if (coef != 0.0) {
      const Expr& rest = parts[i].first;
      if (coef == 1.0) {
        out.push_back(rest);
      } else {
        Node term;
        term.kind = NodeKind::Product;
        term.args.push_back(ExprFactory::constant(coef));
        if (is_kind(rest, NodeKind::Product)) {
          term.args.insert(term.args.end(), rest.node().args.begin(), rest.node().args.end());
        } else {
          term.args.push_back(rest);
        }
        out.push_back(ExprFactory::wrap(std::move(term)));
      }
    }
    i = j;
  }
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (out.empty()) return ExprFactory::constant(c);
  if (c != 0.0) out.push_back(ExprFactory::constant(c));
  if (out.size() == 1) return out.front();
  Node n;
  n.kind = NodeKind::Sum;
  n.args = std::move(out);
  return ExprFactory::wrap(std::move(n));
}

Expr make_product(const std::vector<Expr>& factors) {
  Complex c = 1.0;
  std::vector<std::pair<Expr, Rational>> parts;
  auto push = [&](const Expr& f) {
    const Node& n = f.node();
    if (n.kind == NodeKind::Constant) {
      c *= n.value;
    } else if (n.kind == NodeKind::Power) {
      parts.emplace_back(n.args[0], n.exponent);
    } else {
      parts.emplace_back(f, Rational{1, 1});
    }
  };
  for (const Expr& f : factors) {
    if (is_kind(f, NodeKind::Product)) {
      for (const Expr& a : f.node().args) push(a);
    } else {
      push(f);
    }
  }
  if (c == 0.0) return zero_expr();

  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  for (std::size_t i = 0; i < parts.size();) {
    Rational r = parts[i].second;
    std::size_t j = i + 1;
    while (j < parts.size() && compare(parts[i].first, parts[j].first) == 0) r = r + parts[j++].second;
    if (r.num != 0) {
      Expr f = make_power(parts[i].first, r);
      if (auto v = f.as_constant()) {
        c *= *v;
      } else if (is_kind(f, NodeKind::Product)) {
        for (const Expr& a : f.node().args) {
          if (auto av = a.as_constant()) {
            c *= *av;
          } else {
            out.push_back(a);
          }
        }
      } else {
        out.push_back(f);
      }
    }
    i = j;
  }
  if (c == 0.0) return zero_expr();
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (out.empty()) return ExprFactory::constant(c);
  if (out.size() == 1 && c == 1.0) return out.front();
  Node n;
  n.kind = NodeKind::Product;
  if (c != 1.0) n.args.push_back(ExprFactory::constant(c));
  n.args.insert(n.args.end(), out.begin(), out.end());
  return ExprFactory::wrap(std::move(n));
}

Expr raw_power(const Expr& base, Rational r) {
  Node n;
  n.kind = NodeKind::Power;
  n.exponent = r;
  n.args.push_back(base);
  return ExprFactory::wrap(std::move(n));
}

Expr make_power(const Expr& base, Rational r) {
  if (r.num == 0) return ExprFactory::constant(1.0);
  if (r == Rational{1, 1}) return base;
  const Node& b = base.node();
  if (b.kind == NodeKind::Constant) {
    const Complex v = b.value;
    if (r.is_integer()) {
      if (v == 0.0 && r.num < 0) return raw_power(base, r);
      return ExprFactory::constant(ipow(v, r.num));
    }
    if (v == 0.0 && r.num > 0) return zero_expr();
    if (positive_real(v)) return ExprFactory::constant(std::pow(v.real(), r.value()));
    return raw_power(base, r);
  }
  if (b.kind == NodeKind::Power && r.is_integer()) return make_power(b.args[0], b.exponent * r);
  if (b.kind == NodeKind::Product && r.is_integer()) {
    std::vector<Expr> fs;
    fs.reserve(b.args.size());
    for (const Expr& a : b.args) fs.push_back(make_power(a, r));
    return make_product(fs);
  }
  return raw_power(base, r);
}

Expr make_function(Function f, const Expr& arg) {
  if (auto v = arg.as_constant()) {
    switch (f) {
      case Function::Exp: return ExprFactory::constant(std::exp(*v));
      case Function::Sin: return ExprFactory::constant(v->imag() == 0.0 ? Complex(std::sin(v->real())) : std::sin(*v));
      case Function::Cos: return ExprFactory::constant(v->imag() == 0.0 ? Complex(std::cos(v->real())) : std::cos(*v));
      case Function::Log:
        if (positive_real(*v)) return ExprFactory::constant(std::log(v->real()));
        break;
    }
  }
  Node n;
  n.kind = NodeKind::Function;
  n.func = f;
  n.args.push_back(arg);
  return ExprFactory::wrap(std::move(n));
}

}  // namespace

// Expr --------------------------------------------------------------------

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(double value) : Expr(ExprFactory::constant(value)) {}
Expr::Expr(Complex value) : Expr(ExprFactory::constant(value)) {}

Expr Expr::coordinate(Coordinate c) {
  Node n;
  n.kind = NodeKind::Coordinate;
  n.coord = c;
  return ExprFactory::wrap(std::move(n));
}

Expr Expr::parameter(std::string name) {
  Node n;
  n.kind = NodeKind::Parameter;
  n.name = std::move(name);
  return ExprFactory::wrap(std::move(n));
}

std::optional<Complex> Expr::as_constant() const {
  if (node_->kind == NodeKind::Constant) return node_->value;
  return std::nullopt;
}

bool Expr::is_zero() const { return node_->kind == NodeKind::Constant && node_->value == 0.0; }
bool Expr::is_one() const { return node_->kind == NodeKind::Constant && node_->value == 1.0; }
bool Expr::identical(const Expr& other) const { return compare(*this, other) == 0; }

std::size_t Expr::size() const {
  std::size_t s = 1;
  for (const Expr& a : node_->args) s += a.size();
  return s;
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make_sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return make_product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make_product({a, make_power(b, Rational{-1, 1})}); }
Expr operator-(const Expr& a) { return make_product({ExprFactory::constant(-1.0), a}); }

Expr sum(std::vector<Expr> terms) { return make_sum(terms); }
Expr product(std::vector<Expr> factors) { return make_product(factors); }
Expr pow(const Expr& base, Rational exponent) { return make_power(base, exponent); }
Expr sqrt(const Expr& e) { return make_power(e, Rational{1, 2}); }
Expr exp(const Expr& e) { return make_function(Function::Exp, e); }
Expr sin(const Expr& e) { return make_function(Function::Sin, e); }
Expr cos(const Expr& e) { return make_function(Function::Cos, e); }
Expr log(const Expr& e) { return make_function(Function::Log, e); }
Expr apply(Function f, const Expr& e) { return make_function(f, e); }

Expr simplify(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Parameter:
    case NodeKind::Coordinate:
      return e;
    case NodeKind::Function:
      return make_function(n.func, simplify(n.args[0]));
    case NodeKind::Power:
      return make_power(simplify(n.args[0]), n.exponent);
    case NodeKind::Product:
    case NodeKind::Sum: {
      std::vector<Expr> args;
      args.reserve(n.args.size());
      for (const Expr& a : n.args) args.push_back(simplify(a));
      return n.kind == NodeKind::Sum ? make_sum(args) : make_product(args);
    }
  }
  return e;
}

Expr substitute(const Expr& e, std::span<const Expr> values) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Parameter:
      return e;
    case NodeKind::Coordinate: {
      const int dof = static_cast<int>(values.size() / 2);
      if (n.coord.index >= dof) throw std::invalid_argument("substitute: coordinate " + n.coord.name() + " not covered");
      return values[static_cast<std::size_t>(n.coord.slot(dof))];
    }
    case NodeKind::Function:
      return make_function(n.func, substitute(n.args[0], values));
    case NodeKind::Power:
      return make_power(substitute(n.args[0], values), n.exponent);
    case NodeKind::Product:
    case NodeKind::Sum: {
      std::vector<Expr> args;
      args.reserve(n.args.size());
      for (const Expr& a : n.args) args.push_back(substitute(a, values));
      return n.kind == NodeKind::Sum ? make_sum(args) : make_product(args);
    }
  }
  return e;
}

// Differentiation ----------------------------------------------------------

Expr differentiate(const Expr& e, Coordinate var) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Parameter:
      return zero_expr();
    case NodeKind::Coordinate:
      return n.coord == var ? Expr(1.0) : zero_expr();
    case NodeKind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& a : n.args) {
        Expr d = differentiate(a, var);
        if (!d.is_zero()) terms.push_back(std::move(d));
      }
      return make_sum(terms);
    }
    case NodeKind::Product: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        Expr d = differentiate(n.args[i], var);
        if (d.is_zero()) continue;
        std::vector<Expr> fs = n.args;
        fs[i] = std::move(d);
        terms.push_back(make_product(fs));
      }
      return make_sum(terms);
    }
    case NodeKind::Power: {
      Expr d = differentiate(n.args[0], var);
      if (d.is_zero()) return zero_expr();
      const Rational r = n.exponent;
      return make_product({Expr(r.value()), make_power(n.args[0], r - Rational{1, 1}), d});
    }
    case NodeKind::Function: {
      const Expr& u = n.args[0];
      Expr d = differentiate(u, var);
      if (d.is_zero()) return zero_expr();
      switch (n.func) {
        case Function::Exp: return make_product({e, d});
        case Function::Sin: return make_product({make_function(Function::Cos, u), d});
        case Function::Cos: return make_product({Expr(-1.0), make_function(Function::Sin, u), d});
        case Function::Log: return make_product({d, make_power(u, Rational{-1, 1})});
      }
    }
  }
  return zero_expr();
}

// Evaluation ---------------------------------------------------------------

namespace {

template <class Scalar>
Complex eval_node(const Node& n, std::span<const Scalar> point, int dof, const Bindings& params) {
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value;
    case NodeKind::Parameter: {
      auto it = params.find(n.name);
      if (it == params.end()) throw EvalError(EvalError::Kind::UnboundSymbol, "unbound symbol '" + n.name + "'");
      return it->second;
    }
    case NodeKind::Coordinate: {
      if (n.coord.index >= dof) {
        throw EvalError(EvalError::Kind::UnboundSymbol, "coordinate " + n.coord.name() + " outside the point");
      }
      return Complex(point[static_cast<std::size_t>(n.coord.slot(dof))]);
    }
    case NodeKind::Sum: {
      Complex s = 0.0;
      for (const Expr& a : n.args) s += eval_node(a.node(), point, dof, params);
      return s;
    }
    case NodeKind::Product: {
      Complex s = 1.0;
      for (const Expr& a : n.args) s *= eval_node(a.node(), point, dof, params);
      return s;
    }
    case NodeKind::Power: {
      const Complex b = eval_node(n.args[0].node(), point, dof, params);
      const Rational r = n.exponent;
      if (r.is_integer()) {
        if (b == 0.0 && r.num < 0) throw EvalError(EvalError::Kind::Domain, "division by zero");
        return ipow(b, r.num);
      }
      if (b == 0.0) {
        if (r.num > 0) return 0.0;
        throw EvalError(EvalError::Kind::Domain, "division by zero");
      }
      if (!positive_real(b)) {
        throw EvalError(EvalError::Kind::Domain, "non-integer power of a non-positive or complex base");
      }
      return std::pow(b.real(), r.value());
    }
    case NodeKind::Function: {
      const Complex u = eval_node(n.args[0].node(), point, dof, params);
      const bool real = u.imag() == 0.0;
      switch (n.func) {
        case Function::Exp: return real ? Complex(std::exp(u.real())) : std::exp(u);
        case Function::Sin: return real ? Complex(std::sin(u.real())) : std::sin(u);
        case Function::Cos: return real ? Complex(std::cos(u.real())) : std::cos(u);
        case Function::Log:
          if (!positive_real(u)) throw EvalError(EvalError::Kind::Domain, "log of a non-positive or complex value");
          return std::log(u.real());
      }
    }
  }
  return 0.0;
}

}  // namespace

Complex evaluate(const Expr& e, std::span<const double> point, const Bindings& params) {
  return eval_node<double>(e.node(), point, static_cast<int>(point.size() / 2), params);
}

Complex evaluate(const Expr& e, std::span<const Complex> point, const Bindings& params) {
  return eval_node<Complex>(e.node(), point, static_cast<int>(point.size() / 2), params);
}

double evaluate_real(const Expr& e, std::span<const double> point, const Bindings& params) {
  const Complex v = evaluate(e, point, params);
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real()))) {
    throw EvalError(EvalError::Kind::NotReal, "expression is not real-valued: " + e.str());
  }
  return v.real();
}

// Printing -----------------------------------------------------------------

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Whether the constant prints with a leading minus sign.
bool negative_constant(Complex v) { return v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0); }
bool simple_constant(Complex v) { return v.imag() == 0.0 || v.real() == 0.0; }

std::string constant_text(Complex v) {
  if (v.imag() == 0.0) return number(v.real());
  if (v.real() == 0.0) {
    if (v.imag() == 1.0) return "i";
    if (v.imag() == -1.0) return "-i";
    return number(v.imag()) + "*i";
  }
  const double im = std::abs(v.imag());
  std::string s = "(" + number(v.real()) + (v.imag() < 0.0 ? "-" : "+");
  s += (im == 1.0 ? std::string("i") : number(im) + "*i");
  return s + ")";
}

bool negative_term(const Expr& e) {
  const Node& n = e.node();
  if (n.kind == NodeKind::Constant) return simple_constant(n.value) && negative_constant(n.value);
  if (n.kind == NodeKind::Product && is_kind(n.args[0], NodeKind::Constant)) {
    const Complex c = n.args[0].node().value;
    return simple_constant(c) && negative_constant(c);
  }
  return false;
}

void print(const Expr& e, std::string& out, int ctx);

void print_product_body(const Node& n, std::string& out) {
  bool first = true;
  for (const Expr& a : n.args) {
    if (!first) out += '*';
    first = false;
    if (auto c = a.as_constant()) {
      if (*c == 1.0) {
        out += '1';
      } else if (simple_constant(*c) && !negative_constant(*c)) {
        out += constant_text(*c);
      } else {
        out += '(' + constant_text(*c) + ')';
      }
    } else {
      print(a, out, kProduct + 1);
    }
  }
}

void print(const Expr& e, std::string& out, int ctx) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant: {
      const std::string s = constant_text(n.value);
      const bool wrap = (ctx > kSum && negative_term(e)) || (ctx > kProduct && n.value.imag() != 0.0 && n.value.real() == 0.0);
      out += wrap ? "(" + s + ")" : s;
      return;
    }
    case NodeKind::Parameter:
      out += n.name;
      return;
    case NodeKind::Coordinate:
      out += n.coord.name();
      return;
    case NodeKind::Function: {
      static const char* names[] = {"exp", "sin", "cos", "log"};
      out += names[static_cast<int>(n.func)];
      out += '(';
      print(n.args[0], out, 0);
      out += ')';
      return;
    }
    case NodeKind::Power: {
      if (n.exponent == Rational{1, 2}) {
        out += "sqrt(";
        print(n.args[0], out, 0);
        out += ')';
        return;
      }
      const bool wrap = ctx > kPower;
      if (wrap) out += '(';
      print(n.args[0], out, kAtom);
      out += '^';
      if (n.exponent.is_integer() && n.exponent.num > 0) {
        out += std::to_string(n.exponent.num);
      } else {
        out += '(' + std::to_string(n.exponent.num);
        if (!n.exponent.is_integer()) out += '/' + std::to_string(n.exponent.den);
        out += ')';
      }
      if (wrap) out += ')';
      return;
    }
    case NodeKind::Product: {
      const bool wrap = ctx > kProduct;
      if (wrap) out += '(';
      if (negative_term(e)) {
        out += '-';
        const Expr neg = -e;
        if (is_kind(neg, NodeKind::Product)) {
          print_product_body(neg.node(), out);
        } else {
          print(neg, out, kProduct + 1);
        }
      } else {
        print_product_body(n, out);
      }
      if (wrap) out += ')';
      return;
    }
    case NodeKind::Sum: {
      const bool wrap = ctx > kSum;
      if (wrap) out += '(';
      bool first = true;
      for (const Expr& t : n.args) {
        if (first) {
          print(t, out, kSum);
        } else if (negative_term(t)) {
          out += " - ";
          print(-t, out, kSum + 1);
        } else {
          out += " + ";
          print(t, out, kSum + 1);
        }
        first = false;
      }
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print(*this, out, 0);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

}  // namespace gq

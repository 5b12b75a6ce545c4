#pragma once

// Symbolic smooth functions on the phase space T*R^n.
//
// An Expr is an immutable expression tree over real/complex constants, the
// coordinates x1..xn, p1..pn, named parameters (hbar, m and user constants)
// and the operations +, *, rational powers, exp, sin, cos and log. Subtraction,
// division and sqrt are expressed through these. Every constructor applies a
// small terminating rewrite system (constant folding, 0/1 identities,
// flattening, collection of identical terms and powers), so expressions are
// always kept in simplified form.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gq {

using Complex = std::complex<double>;

/// Named parameter values used during evaluation (hbar, m, user constants).
using Bindings = std::map<std::string, Complex, std::less<>>;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den = 1);

  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A phase-space coordinate: position x^j or momentum p_j (zero-based j).
struct Coordinate {
  enum class Kind : std::uint8_t { Position, Momentum };

  Kind kind = Kind::Position;
  int index = 0;

  static Coordinate x(int j) { return {Kind::Position, j}; }
  static Coordinate p(int j) { return {Kind::Momentum, j}; }

  bool is_position() const { return kind == Kind::Position; }
  /// Slot in a state vector ordered (x1..xn, p1..pn).
  int slot(int dof) const { return is_position() ? index : dof + index; }
  /// "x1", "p2", ... (one-based, matching the expression grammar).
  std::string name() const;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// The ambient phase space (T*R^n, Omega) together with hbar and the mass.
class PhaseSpace {
 public:
  explicit PhaseSpace(int dof, double hbar = 1.0, double mass = 1.0);

  int dof() const { return dof_; }
  int dim() const { return 2 * dof_; }
  double hbar() const { return hbar_; }
  double mass() const { return mass_; }

  /// Coordinates in the fixed order (x1..xn, p1..pn).
  std::vector<Coordinate> coordinates() const;
  /// Coordinate occupying slot k of a state vector.
  Coordinate coordinate(int slot) const;

  /// hbar, m and any user parameters set on this space.
  const Bindings& bindings() const { return bindings_; }
  void set_parameter(const std::string& name, double value);

 private:
  int dof_;
  double hbar_;
  double mass_;
  Bindings bindings_;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { UnboundSymbol, Domain, NotReal };
  EvalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class Function : std::uint8_t { Exp, Sin, Cos, Log };

struct Node;

class Expr {
 public:
  /// The zero constant.
  Expr();
  Expr(double value);   // NOLINT(google-explicit-constructor)
  Expr(Complex value);  // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<double>(value)) {}  // NOLINT

  static Expr coordinate(Coordinate c);
  static Expr x(int j) { return coordinate(Coordinate::x(j)); }
  static Expr p(int j) { return coordinate(Coordinate::p(j)); }
  static Expr parameter(std::string name);
  static Expr hbar() { return parameter("hbar"); }
  static Expr mass() { return parameter("m"); }
  static Expr imaginary_unit() { return Expr(Complex(0.0, 1.0)); }

  std::optional<Complex> as_constant() const;
  bool is_zero() const;
  bool is_one() const;

  /// Structural identity of the simplified trees.
  bool identical(const Expr& other) const;
  /// Number of nodes in the tree.
  std::size_t size() const;

  std::string str() const;

  const Node& node() const { return *node_; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct ExprFactory;
};

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr pow(const Expr& base, Rational exponent);
inline Expr pow(const Expr& base, int exponent) { return pow(base, Rational::make(exponent)); }
Expr sqrt(const Expr& e);
Expr exp(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr log(const Expr& e);
Expr apply(Function f, const Expr& e);

/// Replaces every coordinate by values[slot] (slots ordered x1..xn, p1..pn).
Expr substitute(const Expr& e, std::span<const Expr> values);
/// Exact partial derivative with respect to a coordinate.
Expr differentiate(const Expr& e, Coordinate var);

/// Rebuilds the tree through the simplifying constructors. Idempotent.
Expr simplify(const Expr& e);

/// Evaluates at a phase-space point (x1..xn, p1..pn). Throws EvalError for
/// unbound parameters and domain errors (log of a non-positive real,
/// non-integer power of a non-positive base, division by zero).
Complex evaluate(const Expr& e, std::span<const double> point, const Bindings& params = {});
Complex evaluate(const Expr& e, std::span<const Complex> point, const Bindings& params = {});

/// Evaluation in a real context: throws EvalError::NotReal if the value has a
/// non-negligible imaginary part.
double evaluate_real(const Expr& e, std::span<const double> point, const Bindings& params = {});

std::ostream& operator<<(std::ostream& os, const Expr& e);

// Parsing ---------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, IndexOutOfRange };
  ParseError(Kind kind, std::size_t offset, const std::string& message);
  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

struct ParseOptions {
  int dof = 1;
  /// User constants accepted as identifiers besides the reserved ones.
  std::vector<std::string> parameters;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' exponent)?
///   base   := number | ident | '(' expr ')' | func '(' expr ')'
///   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
/// with func in {exp, sin, cos, sqrt, log}; x1..xn, p1..pn are coordinates
/// (plain x, p when n = 1); hbar, m, i are reserved constants.
Expr parse(std::string_view source, const ParseOptions& options);
Expr parse(std::string_view source, const PhaseSpace& space, const std::vector<std::string>& parameters = {});

}  // namespace gq

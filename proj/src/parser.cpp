#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "gq/expr.hpp"

namespace gq {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(message + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

namespace {

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& opts) : src_(src), opts_(opts) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, pos_, msg); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        return sum(std::move(terms));
      }
    }
  }

  Expr term() {
    std::vector<Expr> factors{unary()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (accept('/')) {
        factors.push_back(pow(unary(), Rational{-1, 1}));
      } else {
        return product(std::move(factors));
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return factor();
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) return pow(b, exponent());
    return b;
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    std::int64_t v = 0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc()) {
      pos_ = start;
      fail("exponent out of range");
    }
    return v;
  }

  Rational exponent() {
    if (accept('(')) {
      const bool neg = accept('-');
      std::int64_t num = integer();
      std::int64_t den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator in exponent");
        }
      }
      expect(')');
      return Rational::make(neg ? -num : num, den);
    }
    const bool neg = accept('-');
    const std::int64_t num = integer();
    return Rational::make(neg ? -num : num);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));

    static const std::pair<const char*, int> funcs[] = {{"exp", 0}, {"sin", 1}, {"cos", 2}, {"log", 3}, {"sqrt", 4}};
    for (auto [fname, id] : funcs) {
      if (name != fname) continue;
      expect('(');
      Expr arg = expr();
      expect(')');
      switch (id) {
        case 0: return exp(arg);
        case 1: return sin(arg);
        case 2: return cos(arg);
        case 3: return log(arg);
        default: return sqrt(arg);
      }
    }

    if (name == "i") return Expr::imaginary_unit();
    if (name == "hbar" || name == "m") return Expr::parameter(name);

    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'p') &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      int idx = 0;
      auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec != std::errc() || idx < 1 || idx > opts_.dof) {
        throw ParseError(ParseError::Kind::IndexOutOfRange, start,
                         "coordinate '" + name + "' out of range for n = " + std::to_string(opts_.dof));
      }
      return name[0] == 'x' ? Expr::x(idx - 1) : Expr::p(idx - 1);
    }
    if (opts_.dof == 1 && (name == "x" || name == "p")) return name == "x" ? Expr::x(0) : Expr::p(0);

    if (std::find(opts_.parameters.begin(), opts_.parameters.end(), name) != opts_.parameters.end()) {
      return Expr::parameter(name);
    }
    throw ParseError(ParseError::Kind::UnknownIdentifier, start, "unknown identifier '" + name + "'");
  }

  std::string_view src_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, const ParseOptions& options) { return Parser(source, options).run(); }

Expr parse(std::string_view source, const PhaseSpace& space, const std::vector<std::string>& parameters) {
  ParseOptions opts;
  opts.dof = space.dof();
  opts.parameters = parameters;
  for (const auto& [name, value] : space.bindings()) opts.parameters.push_back(name);
  return parse(source, opts);
}

}  // namespace gq

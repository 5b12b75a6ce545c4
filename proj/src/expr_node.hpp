#pragma once

#include <string>
#include <vector>

#include "gq/expr.hpp"

namespace gq {

// Kinds are listed in canonical sort order.
enum class NodeKind : std::uint8_t { Constant, Parameter, Coordinate, Function, Power, Product, Sum };

struct Node {
  NodeKind kind = NodeKind::Constant;
  Complex value{};
  std::string name;
  Coordinate coord{};
  Function func = Function::Exp;
  Rational exponent{1, 1};
  std::vector<Expr> args;
};

}  // namespace gq

#pragma once

#include <vector>

#include "g235/expr.hpp"

namespace g235::detail {

struct Node {
  Op op = Op::Const;
  Fn fn = Fn::Sin;
  int index = -1;
  int exponent = 0;
  std::size_t hash = 0;
  Rational value;
  std::vector<Expr> args;
};

}  // namespace g235::detail

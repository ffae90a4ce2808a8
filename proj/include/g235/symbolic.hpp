#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "g235/errors.hpp"
#include "g235/expr.hpp"

namespace g235 {

// ---------------------------------------------------------------------------
// Text form
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | ident | func '(' expr ')' | '(' expr ')' | '-' base
//   func   := sin | cos | exp | ln | sqrt
// ---------------------------------------------------------------------------

/// Throws ParseError (with byte offset) or UnknownIdentifier.
Expr parse_expression(std::string_view text, const Chart& chart);

/// Inverse of parse_expression up to whitespace and associativity.
std::string to_string(const Expr& e, const Chart& chart);

/// Flattens nested sums/products and folds literal quotients and negated
/// literals. Two trees that print/parse into each other normalize equal.
Expr normalize_literal(const Expr& e);

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

/// Memoizing partial-derivative engine. Reusing one instance across a
/// computation keeps shared sub-DAGs shared in the derivatives. Not
/// thread-safe; give each thread its own.
class Differentiator {
 public:
  Expr operator()(const Expr& e, int coord);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const void*, int>& k) const noexcept {
      return std::hash<const void*>{}(k.first) * 31u + static_cast<std::size_t>(k.second);
    }
  };
  // the source expression is kept alive so node addresses stay unique
  std::unordered_map<std::pair<const void*, int>, std::pair<Expr, Expr>, KeyHash> cache_;
};

Expr differentiate(const Expr& e, int coord);
/// Throws ChartMismatch when `coord` is not a coordinate of `chart`.
Expr differentiate(const Expr& e, std::string_view coord, const Chart& chart);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluates expressions at a fixed point, caching node values so that many
/// expressions sharing sub-DAGs are evaluated once per node.
class Evaluator {
 public:
  /// Throws DomainError when a coordinate is not finite.
  explicit Evaluator(const Point& p);
  double operator()(const Expr& e);
  const Point& point() const { return point_; }

 private:
  double eval(const Expr& e);
  Point point_;
  // nodes are held so that addresses cannot be recycled while cached
  std::unordered_map<const void*, std::pair<Expr, double>> cache_;
};

double evaluate(const Expr& e, const Point& p);

/// Light normalization: rational constant folding, 0/1 identities,
/// flattening of sums and products, and collection of syntactically identical
/// terms and factors. No expansion, no factoring.
Expr simplify_basic(const Expr& e);

}  // namespace g235

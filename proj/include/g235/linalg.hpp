#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "g235/expr.hpp"

namespace g235 {

/// Dense square matrix of expressions, row-major.
class ExprMatrix {
 public:
  explicit ExprMatrix(std::size_t n = 0) : n_(n), a_(n * n) {}
  std::size_t size() const { return n_; }
  Expr& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Expr> a_;
};

/// Laplace expansion with memoized minors; zero entries are skipped.
Expr determinant(const ExprMatrix& m);

/// Cofactor C(i,j) = (-1)^(i+j) * minor(i,j).
Expr cofactor(const ExprMatrix& m, std::size_t i, std::size_t j);

/// Inverse by the adjugate: every entry is cofactor / det (Cramer's rule).
ExprMatrix inverse(const ExprMatrix& m, const Expr& det);

/// Solution of [[a, b], [c, d]] x = rhs by Cramer's rule.
std::array<Expr, 2> solve2(const Expr& a, const Expr& b, const Expr& c, const Expr& d,
                           const std::array<Expr, 2>& rhs);

}  // namespace g235

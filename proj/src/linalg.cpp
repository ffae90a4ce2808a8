#include "g235/linalg.hpp"

#include <map>

#include "g235/errors.hpp"

namespace g235 {

namespace {

// det of the submatrix built from `rows` (in order) and the columns set in `cols`
class MinorTable {
 public:
  MinorTable(const ExprMatrix& m, std::vector<std::size_t> rows) : m_(m), rows_(std::move(rows)) {}

  Expr det(std::size_t depth, unsigned cols) {
    if (depth == rows_.size()) return Expr(1);
    auto key = std::make_pair(depth, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Expr> terms;
    int sign = 1;
    for (std::size_t j = 0; j < m_.size(); ++j) {
      if (!(cols & (1u << j))) continue;
      const Expr& a = m_(rows_[depth], j);
      if (!a.is_zero()) {
        Expr sub = det(depth + 1, cols & ~(1u << j));
        if (!sub.is_zero()) {
          Expr t = a * sub;
          terms.push_back(sign > 0 ? t : -t);
        }
      }
      sign = -sign;
    }
    Expr r = sum(terms);
    memo_.emplace(key, r);
    return r;
  }

 private:
  const ExprMatrix& m_;
  std::vector<std::size_t> rows_;
  std::map<std::pair<std::size_t, unsigned>, Expr> memo_;
};

}  // namespace

Expr determinant(const ExprMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return Expr(1);
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  MinorTable t(m, rows);
  return t.det(0, (1u << n) - 1);
}

Expr cofactor(const ExprMatrix& m, std::size_t i, std::size_t j) {
  std::size_t n = m.size();
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < n; ++r) {
    if (r != i) rows.push_back(r);
  }
  MinorTable t(m, rows);
  Expr minor = t.det(0, ((1u << n) - 1) & ~(1u << j));
  return (i + j) % 2 == 0 ? minor : -minor;
}

ExprMatrix inverse(const ExprMatrix& m, const Expr& det) {
  std::size_t n = m.size();
  ExprMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != i) rows.push_back(r);
    }
    MinorTable t(m, rows);
    for (std::size_t j = 0; j < n; ++j) {
      Expr minor = t.det(0, ((1u << n) - 1) & ~(1u << j));
      Expr c = (i + j) % 2 == 0 ? minor : -minor;
      // adj(m)(j, i) = C(i, j)
      inv(j, i) = c / det;
    }
  }
  return inv;
}

std::array<Expr, 2> solve2(const Expr& a, const Expr& b, const Expr& c, const Expr& d,
                           const std::array<Expr, 2>& rhs) {
  Expr det = a * d - b * c;
  if (det.is_zero()) throw DegeneracyError("2x2 system is identically singular");
  return {(rhs[0] * d - b * rhs[1]) / det, (a * rhs[1] - rhs[0] * c) / det};
}

}  // namespace g235

#include <unordered_map>

#include "g235/symbolic.hpp"

namespace g235 {

namespace {

Rational rational_pow(const Rational& b, int k) {
  if (k < 0 && sgn(b) == 0) throw DomainError("negative power of zero during simplification");
  Rational base = k >= 0 ? b : Rational(1 / b);
  Rational r(1);
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

/// Terms that compare structurally equal share one slot.
template <class Payload>
class StructuralBuckets {
 public:
  Payload& slot(const Expr& key) {
    auto& bucket = index_[key.hash()];
    for (std::size_t i : bucket) {
      if (same(entries_[i].first, key)) return entries_[i].second;
    }
    bucket.push_back(entries_.size());
    entries_.emplace_back(key, Payload{});
    return entries_.back().second;
  }
  const std::vector<std::pair<Expr, Payload>>& entries() const { return entries_; }

 private:
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
  std::vector<std::pair<Expr, Payload>> entries_;
};

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (sgn(c) == 0) return Expr();
  if (rest.is_one()) return Expr(c);
  if (c == 1) return rest;
  if (c == -1) return Expr::make_neg(rest);
  std::vector<Expr> f{Expr(c)};
  if (rest.op() == Op::Mul) {
    for (const auto& a : rest.args()) f.push_back(a);
  } else {
    f.push_back(rest);
  }
  return Expr::make_mul(std::move(f));
}

class Simplifier {
 public:
  Expr run(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr r = step(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  struct Product {
    Rational coeff{1};
    StructuralBuckets<int> powers;

    void absorb(const Expr& s, int k) {
      switch (s.op()) {
        case Op::Const: coeff *= rational_pow(s.value(), k); return;
        case Op::Mul:
          for (const auto& a : s.args()) absorb(a, k);
          return;
        case Op::Neg:
          if (k % 2 != 0) coeff = -coeff;
          absorb(s.arg(0), k);
          return;
        case Op::Pow: absorb(s.arg(0), s.exponent() * k); return;
        default: powers.slot(s) += k; return;
      }
    }

    Expr build() const {
      if (sgn(coeff) == 0) return Expr();
      std::vector<Expr> factors;
      for (const auto& [base, k] : powers.entries()) {
        if (k == 0) continue;
        factors.push_back(k == 1 ? base : Expr::make_pow(base, k));
      }
      return with_coefficient(coeff, Expr::make_mul(std::move(factors)));
    }
  };

  struct Sum {
    Rational constant{0};
    StructuralBuckets<Rational> terms;

    void absorb(const Expr& s, const Rational& c) {
      switch (s.op()) {
        case Op::Const: constant += c * s.value(); return;
        case Op::Add:
          for (const auto& a : s.args()) absorb(a, c);
          return;
        case Op::Neg: absorb(s.arg(0), Rational(-c)); return;
        case Op::Mul:
          if (s.arg(0).is_const()) {
            auto a = s.args();
            std::vector<Expr> rest(a.begin() + 1, a.end());
            absorb(Expr::make_mul(std::move(rest)), Rational(c * a[0].value()));
            return;
          }
          [[fallthrough]];
        default: terms.slot(s) += c; return;
      }
    }

    Expr build() const {
      std::vector<Expr> out;
      for (const auto& [t, c] : terms.entries()) {
        Expr term = with_coefficient(c, t);
        if (!term.is_zero()) out.push_back(term);
      }
      if (sgn(constant) != 0) out.push_back(Expr(constant));
      return Expr::make_add(std::move(out));
    }
  };

  Expr step(const Expr& e) {
    switch (e.op()) {
      case Op::Const:
      case Op::Var: return e;
      case Op::Neg: {
        Product p;
        p.coeff = -1;
        p.absorb(run(e.arg(0)), 1);
        return p.build();
      }
      case Op::Div: {
        Product p;
        p.absorb(run(e.arg(0)), 1);
        p.absorb(run(e.arg(1)), -1);
        return p.build();
      }
      case Op::Pow: {
        Product p;
        p.absorb(run(e.arg(0)), e.exponent());
        return p.build();
      }
      case Op::Mul: {
        Product p;
        for (const auto& a : e.args()) p.absorb(run(a), 1);
        return p.build();
      }
      case Op::Add: {
        Sum s;
        for (const auto& a : e.args()) s.absorb(run(a), Rational(1));
        return s.build();
      }
      case Op::Func: {
        Expr u = run(e.arg(0));
        switch (e.fn()) {
          case Fn::Sin: return sin(u);
          case Fn::Cos: return cos(u);
          case Fn::Exp: return exp(u);
          case Fn::Ln: return ln(u);
          case Fn::Sqrt: return sqrt(u);
        }
      }
    }
    return e;
  }

  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr simplify_basic(const Expr& e) {
  Simplifier s;
  return s.run(e);
}

}  // namespace g235

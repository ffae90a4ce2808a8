#include <sstream>

#include "g235/symbolic.hpp"

namespace g235 {

namespace {

enum Level { kSum = 1, kProd = 2, kPow = 3, kBase = 4 };

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Level level_of(const Expr& e) {
  switch (e.op()) {
    case Op::Const: return is_integer(e.value()) ? kBase : kProd;
    case Op::Var:
    case Op::Func:
    case Op::Neg: return kBase;
    case Op::Pow: return e.exponent() < 0 ? kProd : kPow;
    case Op::Mul:
    case Op::Div: return kProd;
    case Op::Add: return kSum;
  }
  return kBase;
}

// For a product whose leftmost factor is a negative constant other than -1,
// the same product with that constant negated; zero otherwise.
Expr negated_leading(const Expr& t) {
  if (t.op() != Op::Mul) return Expr();
  const Expr& first = t.arg(0);
  Expr lead;
  if (first.is_const()) {
    if (sgn(first.value()) >= 0 || abs(first.value()) == 1) return Expr();
    lead = Expr(Rational(-first.value()));
  } else {
    lead = negated_leading(first);
    if (lead.is_zero()) return Expr();
  }
  std::vector<Expr> f(t.args().begin(), t.args().end());
  f[0] = lead;
  return Expr::make_mul(std::move(f));
}

class Printer {
 public:
  explicit Printer(const Chart& chart) : chart_(chart) {}

  void print(const Expr& e, Level need) {
    bool paren = level_of(e) < need;
    if (paren) out_ << '(';
    body(e);
    if (paren) out_ << ')';
  }

  std::string str() const { return out_.str(); }

 private:
  void constant(const Rational& q) {
    if (sgn(q) < 0) {
      out_ << '-';
      Rational a = abs(q);
      if (is_integer(a)) {
        out_ << a.get_num().get_str();
      } else {
        // "-p/q" reads back as (-p)/q, which is the same number
        out_ << a.get_num().get_str() << '/' << a.get_den().get_str();
      }
      return;
    }
    out_ << q.get_num().get_str();
    if (!is_integer(q)) out_ << '/' << q.get_den().get_str();
  }

  void body(const Expr& e) {
    switch (e.op()) {
      case Op::Const: constant(e.value()); return;
      case Op::Var: out_ << chart_.name(e.index()); return;
      case Op::Func:
        out_ << function_name(e.fn()) << '(';
        print(e.arg(0), kSum);
        out_ << ')';
        return;
      case Op::Neg:
        out_ << '-';
        print(e.arg(0), kBase);
        return;
      case Op::Pow:
        if (e.exponent() < 0) {
          out_ << "1/";
          print(e.arg(0), kBase);
          if (e.exponent() != -1) out_ << '^' << -e.exponent();
        } else {
          print(e.arg(0), kBase);
          out_ << '^' << e.exponent();
        }
        return;
      case Op::Mul: {
        auto a = e.args();
        print(a[0], kProd);
        for (std::size_t i = 1; i < a.size(); ++i) {
          out_ << '*';
          print(a[i], kPow);
        }
        return;
      }
      case Op::Div:
        print(e.arg(0), kProd);
        out_ << '/';
        print(e.arg(1), kPow);
        return;
      case Op::Add: {
        auto a = e.args();
        print(a[0], kSum);
        for (std::size_t i = 1; i < a.size(); ++i) {
          const Expr& t = a[i];
          if (t.op() == Op::Neg) {
            out_ << " - ";
            print(t.arg(0), kProd);
          } else if (t.is_const() && sgn(t.value()) < 0) {
            out_ << " - ";
            constant(Rational(-t.value()));
          } else if (Expr m = negated_leading(t); !m.is_zero()) {
            // "a - 1/2*q" rather than "a + -1/2*q"
            out_ << " - ";
            print(m, kProd);
          } else {
            out_ << " + ";
            print(t, kProd);
          }
        }
        return;
      }
    }
  }

  const Chart& chart_;
  std::ostringstream out_;
};

void flatten_into(Op op, const Expr& e, std::vector<Expr>& out) {
  if (e.op() == op) {
    for (const auto& a : e.args()) flatten_into(op, a, out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

std::string to_string(const Expr& e, const Chart& chart) {
  Printer p(chart);
  p.print(e, kSum);
  return p.str();
}

Expr normalize_literal(const Expr& e) {
  switch (e.op()) {
    case Op::Const:
    case Op::Var: return e;
    case Op::Neg: {
      Expr a = normalize_literal(e.arg(0));
      if (a.is_const()) return Expr(Rational(-a.value()));
      if (a.op() == Op::Mul && a.arg(0).is_const()) {
        std::vector<Expr> f(a.args().begin(), a.args().end());
        f[0] = Expr(Rational(-f[0].value()));
        return Expr::make_mul(std::move(f));
      }
      return Expr::make_neg(a);
    }
    case Op::Div: {
      Expr n = normalize_literal(e.arg(0));
      Expr d = normalize_literal(e.arg(1));
      if (n.is_const() && d.is_const()) return Expr(Rational(n.value() / d.value()));
      return Expr::make_div(n, d);
    }
    case Op::Pow: {
      Expr b = normalize_literal(e.arg(0));
      if (e.exponent() == -1) return Expr::make_div(Expr(1), b);
      if (e.exponent() < 0) return Expr::make_div(Expr(1), Expr::make_pow(b, -e.exponent()));
      return Expr::make_pow(b, e.exponent());
    }
    case Op::Func: return Expr::make_func(e.fn(), normalize_literal(e.arg(0)));
    case Op::Add:
    case Op::Mul: {
      std::vector<Expr> flat;
      flatten_into(e.op(), e, flat);
      std::vector<Expr> norm;
      for (const auto& a : flat) {
        Expr n = normalize_literal(a);
        if (n.op() == e.op()) {
          flatten_into(e.op(), n, norm);
        } else {
          norm.push_back(n);
        }
      }
      return e.op() == Op::Add ? Expr::make_add(std::move(norm)) : Expr::make_mul(std::move(norm));
    }
  }
  return e;
}

}  // namespace g235

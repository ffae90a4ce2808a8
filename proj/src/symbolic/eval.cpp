#include <cmath>

#include "g235/symbolic.hpp"

namespace g235 {

namespace {

constexpr double kTinyDenominator = 1e-300;

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite value in ") + what);
  return v;
}

}  // namespace

Evaluator::Evaluator(const Point& p) : point_(p) {
  for (double v : p) {
    if (!std::isfinite(v)) throw DomainError("evaluation point has a non-finite coordinate");
  }
}

double Evaluator::operator()(const Expr& e) { return eval(e); }

double Evaluator::eval(const Expr& e) {
  if (e.op() == Op::Var) return point_[static_cast<std::size_t>(e.index())];
  if (e.op() == Op::Const) return e.value().get_d();
  if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;

  double v = 0.0;
  switch (e.op()) {
    case Op::Const:
    case Op::Var: break;
    case Op::Add:
      for (const auto& a : e.args()) v += eval(a);
      break;
    case Op::Mul:
      v = 1.0;
      for (const auto& a : e.args()) v *= eval(a);
      break;
    case Op::Neg: v = -eval(e.arg(0)); break;
    case Op::Div: {
      double den = eval(e.arg(1));
      if (std::abs(den) < kTinyDenominator) throw DomainError("division by zero");
      v = eval(e.arg(0)) / den;
      break;
    }
    case Op::Pow: {
      double b = eval(e.arg(0));
      int n = e.exponent();
      if (n < 0 && std::abs(b) < kTinyDenominator) throw DomainError("negative power of zero");
      v = std::pow(b, n);
      break;
    }
    case Op::Func: {
      double u = eval(e.arg(0));
      switch (e.fn()) {
        case Fn::Sin: v = std::sin(u); break;
        case Fn::Cos: v = std::cos(u); break;
        case Fn::Exp: v = std::exp(u); break;
        case Fn::Ln:
          if (u <= 0.0) throw DomainError("ln of a non-positive value");
          v = std::log(u);
          break;
        case Fn::Sqrt:
          if (u < 0.0) throw DomainError("sqrt of a negative value");
          v = std::sqrt(u);
          break;
      }
      break;
    }
  }
  checked(v, "evaluation");
  cache_.emplace(e.id(), std::make_pair(e, v));
  return v;
}

double evaluate(const Expr& e, const Point& p) {
  Evaluator ev(p);
  return ev(e);
}

}  // namespace g235

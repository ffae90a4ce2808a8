#include "g235/symbolic.hpp"

namespace g235 {

Expr Differentiator::operator()(const Expr& e, int coord) {
  if (coord < 0 || coord >= kDim) throw ChartMismatch("coordinate index out of range");
  auto key = std::make_pair(e.id(), coord);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second.second;

  Expr d;
  switch (e.op()) {
    case Op::Const: break;
    case Op::Var: d = Expr(e.index() == coord ? 1 : 0); break;
    case Op::Add: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) {
        Expr da = (*this)(a, coord);
        if (!da.is_zero()) terms.push_back(da);
      }
      d = sum(terms);
      break;
    }
    case Op::Mul: {
      auto args = e.args();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr di = (*this)(args[i], coord);
        if (di.is_zero()) continue;
        Expr t = di;
        for (std::size_t j = 0; j < args.size(); ++j) {
          if (j != i) t = t * args[j];
        }
        terms.push_back(t);
      }
      d = sum(terms);
      break;
    }
    case Op::Neg: d = -(*this)(e.arg(0), coord); break;
    case Op::Div: {
      const Expr& u = e.arg(0);
      const Expr& v = e.arg(1);
      Expr du = (*this)(u, coord);
      Expr dv = (*this)(v, coord);
      if (dv.is_zero()) {
        d = du / v;
      } else {
        d = (du * v - u * dv) / pow(v, 2);
      }
      break;
    }
    case Op::Pow: {
      const Expr& b = e.arg(0);
      Expr db = (*this)(b, coord);
      if (!db.is_zero()) d = Expr(e.exponent()) * pow(b, e.exponent() - 1) * db;
      break;
    }
    case Op::Func: {
      const Expr& u = e.arg(0);
      Expr du = (*this)(u, coord);
      if (du.is_zero()) break;
      switch (e.fn()) {
        case Fn::Sin: d = cos(u) * du; break;
        case Fn::Cos: d = -(sin(u) * du); break;
        case Fn::Exp: d = e * du; break;
        case Fn::Ln: d = du / u; break;
        case Fn::Sqrt: d = du / (Expr(2) * e); break;
      }
      break;
    }
  }
  cache_.emplace(key, std::make_pair(e, d));
  return d;
}

Expr differentiate(const Expr& e, int coord) {
  Differentiator d;
  return d(e, coord);
}

Expr differentiate(const Expr& e, std::string_view coord, const Chart& chart) {
  int idx = chart.index_of(coord);
  if (idx < 0) throw ChartMismatch("'" + std::string(coord) + "' is not a coordinate of the chart");
  return differentiate(e, idx);
}

}  // namespace g235

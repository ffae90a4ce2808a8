#include "g235/distribution.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace g235 {

VectorField VectorField::coordinate(int i) {
  VectorField v;
  v[i] = Expr(1);
  return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r[i] = a[i] + b[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r[i] = a[i] - b[i];
  return r;
}

VectorField operator*(const Expr& s, const VectorField& v) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r[i] = s * v[i];
  return r;
}

Expr apply(const VectorField& x, const Expr& e, Differentiator& d) {
  std::vector<Expr> terms;
  for (int m = 0; m < kDim; ++m) {
    if (x[m].is_zero()) continue;
    Expr dm = d(e, m);
    if (!dm.is_zero()) terms.push_back(x[m] * dm);
  }
  return sum(terms);
}

VectorField lie_bracket(const VectorField& x, const VectorField& y, Differentiator& d) {
  VectorField r;
  for (int k = 0; k < kDim; ++k) r[k] = apply(x, y[k], d) - apply(y, x[k], d);
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  Differentiator d;
  return lie_bracket(x, y, d);
}

VectorField simplified(const VectorField& v) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r[i] = simplify_basic(v[i]);
  return r;
}

std::array<Expr, kDim> AdaptedFrame::coords(const VectorField& v) const {
  std::array<Expr, kDim> out;
  for (std::size_t k = 0; k < kDim; ++k) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < kDim; ++i) {
      if (!inverse(k, i).is_zero() && !v.c[i].is_zero()) terms.push_back(inverse(k, i) * v.c[i]);
    }
    out[k] = sum(terms);
  }
  return out;
}

VectorField AdaptedFrame::combine(const std::array<Expr, kDim>& a) const {
  VectorField r;
  for (int i = 0; i < kDim; ++i) {
    std::vector<Expr> terms;
    for (std::size_t k = 0; k < kDim; ++k) {
      if (!a[k].is_zero() && !f[k][i].is_zero()) terms.push_back(a[k] * f[k][i]);
    }
    r[i] = sum(terms);
  }
  return r;
}

AdaptedFrame bracket_frame(const Distribution& dist, Differentiator& d) {
  AdaptedFrame fr;
  fr.samples = dist.samples;
  fr.f[0] = dist.xi;
  fr.f[1] = dist.eta;
  fr.f[2] = simplified(lie_bracket(fr.f[0], fr.f[1], d));
  fr.f[3] = simplified(lie_bracket(fr.f[0], fr.f[2], d));
  fr.f[4] = simplified(lie_bracket(fr.f[1], fr.f[2], d));
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t k = 0; k < kDim; ++k) fr.matrix(i, k) = fr.f[k].c[i];
  }
  fr.det = simplify_basic(determinant(fr.matrix));
  return fr;
}

namespace {

int numeric_rank(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > kDegenerateDet * scale) ++r;
  }
  return r;
}

}  // namespace

GenericityReport check_generic(const Distribution& dist, const std::vector<Point>& points) {
  Differentiator d;
  AdaptedFrame fr = bracket_frame(dist, d);
  GenericityReport rep;
  rep.pass = !points.empty();
  for (const auto& p : points) {
    GenericityEntry e;
    e.point = p;
    try {
      Evaluator ev(p);
      Eigen::Matrix<double, kDim, kDim> m;
      for (int i = 0; i < kDim; ++i) {
        for (int k = 0; k < kDim; ++k) m(i, k) = ev(fr.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(k)));
      }
      e.rank_h = numeric_rank(m.leftCols(2));
      e.rank_h2 = numeric_rank(m.leftCols(3));
      e.rank_full = numeric_rank(m);
      e.abs_det = std::abs(m.determinant());
      e.pass = e.rank_h == 2 && e.rank_h2 == 3 && e.rank_full == 5 && e.abs_det >= kDegenerateDet;
    } catch (const DomainError& ex) {
      e.error = ex.what();
      e.pass = false;
    }
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

AdaptedFrame adapted_frame(const Distribution& dist, Differentiator& d) {
  AdaptedFrame fr = bracket_frame(dist, d);
  if (fr.det.is_zero()) throw DegeneracyError("frame determinant vanishes identically");
  for (std::size_t i = 0; i < dist.samples.size(); ++i) {
    double v = evaluate(fr.det, dist.samples[i]);
    if (std::abs(v) < kDegenerateDet) throw DegeneracyError("adapted frame is degenerate", i);
  }
  ExprMatrix inv = inverse(fr.matrix, fr.det);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) inv(i, j) = simplify_basic(inv(i, j));
  }
  fr.inverse = std::move(inv);
  return fr;
}

AdaptedFrame adapted_frame(const Distribution& dist) {
  Differentiator d;
  return adapted_frame(dist, d);
}

Gr3Coords solve_in_gr3(const VectorField& target, const AdaptedFrame& frame) {
  auto c = frame.coords(target);
  return {c[3], c[4]};
}

}  // namespace g235

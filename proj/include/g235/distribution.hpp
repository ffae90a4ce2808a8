#pragma once

#include <array>
#include <vector>

#include "g235/expr.hpp"
#include "g235/linalg.hpp"
#include "g235/symbolic.hpp"

namespace g235 {

/// Components in the coordinate basis d/dx^0 .. d/dx^4.
struct VectorField {
  std::array<Expr, kDim> c;

  const Expr& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Expr& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  static VectorField coordinate(int i);
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& s, const VectorField& v);

/// X . e = sum_m X^m d_m e
Expr apply(const VectorField& x, const Expr& e, Differentiator& d);

/// [X, Y]^k = sum_i (X^i d_i Y^k - Y^i d_i X^k)
VectorField lie_bracket(const VectorField& x, const VectorField& y, Differentiator& d);
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Component-wise simplify_basic.
VectorField simplified(const VectorField& v);

/// Rank-2 distribution H = span{xi, eta} on a chart, with the sample points at
/// which genericity and nondegeneracy are certified.
struct Distribution {
  Chart chart;
  VectorField xi;
  VectorField eta;
  std::vector<Point> samples;
};

/// f1 = xi, f2 = eta, f3 = [f1,f2], f4 = [f1,f3], f5 = [f2,f3].
/// `matrix` holds the fields as columns; `inverse` rows are the dual coframe.
struct AdaptedFrame {
  std::array<VectorField, kDim> f;
  ExprMatrix matrix{kDim};
  Expr det;
  ExprMatrix inverse{kDim};
  std::vector<Point> samples;  // copied from the distribution; used by degeneracy guards

  /// Coefficients of v in the frame: v = sum_k coords(v)[k] f_k.
  std::array<Expr, kDim> coords(const VectorField& v) const;
  /// The coordinate vector field sum_k a[k] f_k.
  VectorField combine(const std::array<Expr, kDim>& a) const;
};

/// Coefficients of a class in gr_{-3} in the basis q([xi, f3]), q([eta, f3]).
struct Gr3Coords {
  Expr c1;
  Expr c2;
};

struct GenericityEntry {
  Point point{};
  int rank_h = 0;       // rank of {f1, f2}
  int rank_h2 = 0;      // rank of {f1, f2, f3}
  int rank_full = 0;    // rank of {f1, ..., f5}
  double abs_det = 0.0; // |det frame_matrix|
  bool pass = false;
  std::string error;    // evaluation failure, if any
};

struct GenericityReport {
  std::vector<GenericityEntry> entries;
  bool pass = false;
};

/// Threshold on |det| below which a frame counts as degenerate.
inline constexpr double kDegenerateDet = 1e-9;

/// Builds the five bracket fields symbolically without any numeric checks.
AdaptedFrame bracket_frame(const Distribution& dist, Differentiator& d);

/// Growth vector certification at each point. Failures are report entries.
GenericityReport check_generic(const Distribution& dist, const std::vector<Point>& points);

/// Throws DegeneracyError when |det| < kDegenerateDet at a registered sample point.
AdaptedFrame adapted_frame(const Distribution& dist);
AdaptedFrame adapted_frame(const Distribution& dist, Differentiator& d);

Gr3Coords solve_in_gr3(const VectorField& target, const AdaptedFrame& frame);

}  // namespace g235

#pragma once

// Shared fixtures and hand-rolled generators for the test suites.

#include <algorithm>
#include <cmath>
#include <random>

#include "g235/verify.hpp"

namespace fixtures {

using namespace g235;

inline const Point kHilbertCartanBase{0, 0, 0, 1, 0};

inline Expr x() { return Expr::var(0); }
inline Expr y() { return Expr::var(1); }
inline Expr p() { return Expr::var(2); }
inline Expr q() { return Expr::var(3); }
inline Expr z() { return Expr::var(4); }

inline Distribution hilbert_cartan(std::vector<Point> pts) { return monge_distribution({pow(q(), 2)}, std::move(pts)); }
inline Distribution perturbed(std::vector<Point> pts) {
  return monge_distribution({pow(q(), 2) + x() * y()}, std::move(pts));
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::mt19937_64& rng() { return rng_; }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Rational rational() {
    int n = integer(-9, 9), d = integer(1, 6);
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  Point point(double radius = 1.0) {
    Point pt;
    for (auto& c : pt) c = real(-radius, radius);
    return pt;
  }
  std::vector<Point> points(std::size_t n, double radius = 1.0) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(point(radius));
    return out;
  }
  Expr polynomial(int degree = 3) { return random_polynomial(rng_, degree); }

  /// Random tree with functions applied only where they are defined everywhere.
  Expr expression(int depth) {
    if (depth == 0 || integer(0, 3) == 0) {
      return integer(0, 2) == 0 ? Expr(rational()) : Expr::var(integer(0, kDim - 1));
    }
    switch (integer(0, 8)) {
      case 0:
      case 1: return expression(depth - 1) + expression(depth - 1);
      case 2: return expression(depth - 1) - expression(depth - 1);
      case 3:
      case 4: return expression(depth - 1) * expression(depth - 1);
      case 5: return expression(depth - 1) / (Expr(2) + pow(expression(depth - 1), 2));
      case 6: return pow(expression(depth - 1), integer(2, 3));
      case 7: return integer(0, 1) ? sin(expression(depth - 1)) : cos(expression(depth - 1));
      default: return integer(0, 1) ? exp(expression(depth - 1) / Expr(4))
                                    : ln(Expr(1) + pow(expression(depth - 1), 2));
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  double s = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / s;
}

}  // namespace fixtures

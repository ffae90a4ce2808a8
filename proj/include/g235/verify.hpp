#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "g235/metric.hpp"

namespace g235 {

/// Pinned tolerances of the property suite (all relative).
struct Tolerances {
  double conformal = 1e-8;
  double sign_flip = 1e-10;
  double rescaling = 1e-8;
  double torsion = 1e-9;
  double factor_three = 1e-10;
  double isotropy = kIsotropyTol;

  /// Every tolerance set to `tol`.
  static Tolerances uniform(double tol);
};

/// Polynomial of total degree <= max_degree in the five coordinates with
/// coefficients k/10, |k| <= 5; each monomial present with probability 1/2.
Expr random_polynomial(std::mt19937_64& rng, int max_degree = 2);

/// Uniform in [-radius, radius]^5.
std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, double radius = 1.0);

struct PropertyCheck {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string error;
};

struct PropertySuite {
  std::vector<PropertyCheck> checks;
  bool pass = false;
  const PropertyCheck* find(const std::string& name) const;
};

/// Max over points of relative_residual(g_resc, e^{2f} g_base).
double conformal_residual(const Pipeline& base, const Pipeline& rescaled, const Expr& f,
                          const std::vector<Point>& points);
/// Max over points of relative_residual(g_a, g_b).
double metric_residual(const MetricTensor& a, const MetricTensor& b, const std::vector<Point>& points);

struct RescalingResiduals {
  double reeb = 0.0;
  double extension = 0.0;
  double projection = 0.0;
};

/// Closed-form transformation laws evaluated from `base` against the
/// independently built `rescaled` run (contact form e^f times base).
RescalingResiduals compare_rescaling_laws(const Pipeline& base, const Pipeline& rescaled, const Expr& f,
                                          const std::vector<Point>& points);

/// Torsion identity on (f1, f2) and on consecutive pairs of `extra`.
double torsion_check(const Pipeline& p, const std::vector<HField>& extra, const std::vector<Point>& points);

/// relative_residual(alternate_metric, 3 g) maximized over points.
double alternate_metric_check(const Pipeline& p, const std::vector<Point>& points);

/// The full suite: conformal invariance, sign flip, the three transformation
/// laws, torsion, signature/isotropy and the factor-3 relation.
PropertySuite run_property_suite(const Distribution& dist, const Expr& f, const std::vector<Point>& points,
                                 const Constants& k, const Tolerances& tol, std::uint64_t seed);

}  // namespace g235

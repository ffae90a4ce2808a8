#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "g235/contact.hpp"

namespace g235 {

using Matrix5 = Eigen::Matrix<double, kDim, kDim>;

/// Antisymmetric matrix of a two-form in the coordinate cobasis.
using TwoForm = std::array<std::array<Expr, kDim>, kDim>;

/// Symmetric bilinear form on coordinate fields.
struct MetricTensor {
  std::array<std::array<Expr, kDim>, kDim> g;
};

/// z' = F(x, y, y', y'', z) on the chart (x, y, p, q, z).
struct MongeSpec {
  Expr F;
};

/// xi = d/dq, eta = d/dx + p d/dy + q d/dp + F d/dz. Genericity is not checked here.
Distribution monge_distribution(const MongeSpec& spec, std::vector<Point> samples = {});

/// (dw)_ij = d_i w_j - d_j w_i
TwoForm exterior_derivative(const ExtendedForm& w, Differentiator& d);
Expr two_form_apply(const TwoForm& w, const VectorField& x, const VectorField& y);

/// g(z, z') = dw(z_1, pi(z')) - 4/3 w(z) w(z') + dw(z'_1, pi(z)) with w the extended form.
MetricTensor assemble_metric(const ContactData& data, Differentiator& d);

/// -3 dw(pi(z), z'_1) - 3 dw(pi(z'), z_1) - 4 w(z) w(z'); equals 3 g.
MetricTensor alternate_metric(const ContactData& data, Differentiator& d);

Matrix5 metric_values(const MetricTensor& m, const Point& p);
Matrix5 metric_values(const MetricTensor& m, Evaluator& ev);

/// Max entrywise |a - b| divided by the largest entry of either matrix.
double relative_residual(const Matrix5& a, const Matrix5& b);

struct SignatureEntry {
  Point point{};
  int positive = 0;
  int negative = 0;
  double det = 0.0;
  std::array<double, kDim> eigenvalues{};
  // filled by signature_report
  double isotropy_h = 0.0;     // span{f1, f2}
  double isotropy_k = 0.0;     // ker pi_{-1} cap ker w
  double pairing_det = 0.0;    // scaled det of the pairing between the two
  double g_rr = 0.0;
  bool pass = false;
  std::string error;
};

struct SignatureReport {
  std::vector<SignatureEntry> entries;
  bool pass = false;
};

/// Relative threshold on eigenvalues below which the metric is degenerate.
inline constexpr double kDegenerateEigen = 1e-8;
inline constexpr double kIsotropyTol = 1e-9;
inline constexpr double kPairingTol = 1e-10;

/// Sign counts of a numeric symmetric matrix. Throws DegeneracyError when an
/// eigenvalue is below kDegenerateEigen times the largest one.
SignatureEntry signature(const Matrix5& g);
SignatureEntry signature(const MetricTensor& gm, const Point& p);

/// Numeric vector fields spanning ker(pi_{-1}) cap ker(w): [r, f_i] - A(f_i)
/// with A the H-valued part of pi_{-1} on [r, f_i].
std::array<VectorField, 2> isotropic_complement(const ContactData& data);

/// Signature plus isotropy and pairing checks at every sample point.
SignatureReport signature_report(const ContactData& data, const MetricTensor& gm);

/// One run of the construction with its own derivative cache.
struct Pipeline {
  std::shared_ptr<Differentiator> diff;
  ContactData data;
  MetricTensor metric;
};

Pipeline run_pipeline(const Distribution& dist, const ContactForm& alpha, const Constants& k = {});
/// With the canonical contact form.
Pipeline run_pipeline(const Distribution& dist, const Constants& k = {});

struct ConformalEntry {
  Point point{};
  double conformal = 0.0;  // relative residual of g_{e^f a} - e^{2f} g_a
  double sign_flip = 0.0;  // relative residual of g_{-a} - g_a
  bool pass = false;
  std::string error;
};

struct ConformalReport {
  std::vector<ConformalEntry> entries;
  double max_conformal = 0.0;
  double max_sign_flip = 0.0;
  bool pass = false;
};

/// Three independent runs (a, e^f a, -a) compared at `points`.
ConformalReport verify_conformal(const Distribution& dist, const ContactForm& alpha, const Expr& f,
                                 const std::vector<Point>& points, const Constants& k = {}, double tol = 1e-8);

}  // namespace g235

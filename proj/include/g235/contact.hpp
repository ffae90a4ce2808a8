#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "g235/distribution.hpp"

namespace g235 {

/// The numerical weights of the construction. Defaults are the only values
/// for which the conformal class is independent of the contact form; the
/// setters exist so tests can show that each one is load-bearing.
struct Constants {
  Rational phi_weight{-2, 5};  // weight of Phi in pi_{-1}
  Rational psi_weight{7, 5};   // weight of Psi in pi_{-1}
  Rational metric_aa{-4, 3};   // coefficient of alpha(z) alpha(z') in g
  Rational ext_df{3};          // hat-alpha = e^f (alpha + 3 df(z_1))
  Rational reeb_delta{4};      // {g, delta} = 4 e^-f df(g) phi
  Rational proj_dfr{3, 2};     // df(r) z_1 term of hat-pi
  Rational proj_dfz{3, 2};     // e^f df(z_1) delta term of hat-pi
  Rational psi_half{1, 2};     // {Psi(g), phi} = 1/2 q([r,[g,r]])

  static const std::vector<std::string>& keys();
  Rational get(std::string_view key) const;
  /// Throws InvariantViolation for an unknown key.
  void set(std::string_view key, const Rational& value);
  bool is_standard() const;
};

/// A section of H written as a f1 + b f2.
struct HField {
  Expr a;
  Expr b;
};

HField operator+(const HField& x, const HField& y);
HField operator-(const HField& x, const HField& y);
HField operator*(const Expr& s, const HField& x);
VectorField to_vector_field(const HField& h, const AdaptedFrame& frame);

/// alpha on T^{-2}M: alpha(f1) = alpha(f2) = 0, alpha(f3) = scale.
struct ContactForm {
  Expr scale;
};

/// Throws InvariantViolation if the scale is the zero expression or
/// |scale| <= kDegenerateDet at one of the points.
ContactForm make_contact_form(const Expr& scale, const std::vector<Point>& samples);
ContactForm canonical_contact_form(const AdaptedFrame& frame);
ContactForm rescaled_form(const ContactForm& alpha, const Expr& f);  // e^f alpha
ContactForm negated_form(const ContactForm& alpha);                  // -alpha

/// A section r of T^{-2}M transversal to H together with the brackets
/// [r, f1], [r, f2] the later stages need.
struct ReebField {
  VectorField r;
  std::array<Expr, kDim> coords;  // frame coefficients; coords[3] = coords[4] = 0
  Expr phi;                       // q_{-2}(r) in units of q_{-2}(f3)
  std::array<VectorField, 2> r_bracket;                // [r, f1], [r, f2]
  std::array<std::array<Expr, kDim>, 2> r_bracket_coords;
};

/// Section of T^{-2}M given by frame coefficients (only the first three used).
ReebField make_section(const AdaptedFrame& frame, const std::array<Expr, kDim>& coords,
                       Differentiator& d);

/// nabla_{f_i} f_j = sum_k gamma[k][i][j] f_k.
struct PartialConnection {
  std::array<std::array<std::array<Expr, 2>, 2>, 2> gamma;
  Expr phi;
};

/// nabla determined by r through {nabla_x y, phi} = q_{-3}([x, [y, r]]).
/// Throws DegeneracyError when q_{-2}(r) is ~0 at a sample point.
PartialConnection partial_connection(const AdaptedFrame& frame, const ReebField& r, Differentiator& d);

/// nabla_x y for sections of H given in the frame.
HField covariant(const PartialConnection& conn, const AdaptedFrame& frame, const HField& x,
                 const HField& y, Differentiator& d);

/// lambda_i with nabla_{f_i} phi = lambda_i phi.
std::array<Expr, 2> gr2_derivative(const PartialConnection& conn, const AdaptedFrame& frame,
                                   Differentiator& d);

/// a(f1, f2) defined by {f1, f2} = a(f1, f2) phi.
Expr a_map(const Expr& phi);

ReebField reeb_field(const AdaptedFrame& frame, const ContactForm& alpha, Differentiator& d);

/// One-form in the coordinate cobasis.
struct ExtendedForm {
  std::array<Expr, kDim> c;
};

Expr apply_form(const ExtendedForm& w, const VectorField& v);

/// The unique extension killing [r, f1] and [r, f2].
ExtendedForm extend_form(const AdaptedFrame& frame, const ContactForm& alpha, const ReebField& r);

/// zeta = [r, zeta_1] + a0 r + zeta_2 with zeta_1, zeta_2 sections of H.
struct Decomposition {
  HField zeta1;
  Expr a0;
  HField zeta2;
  std::array<Expr, 3> residual;  // f3..f5 coefficients of zeta_2; zero up to rounding
};

Decomposition decompose(const VectorField& zeta, const AdaptedFrame& frame, const ExtendedForm& ext,
                        const ReebField& r, Differentiator& d);

/// Residual of zeta_2 outside H above this (relative) value is an internal error.
inline constexpr double kDecompositionResidual = 1e-8;

enum class OperatorKind { Phi, Psi };

/// Values of Phi or Psi on the frame f1, f2. Extension to general sections:
/// Op(a f1 + b f2) = a Op(f1) + b Op(f2) + (r.a) f1 + (r.b) f2.
struct HOperator {
  std::array<HField, 2> images;
  OperatorKind kind = OperatorKind::Phi;
};

HField apply_operator(const HOperator& op, const HField& g, const ReebField& r, Differentiator& d);

/// Which frame field absorbs 1/scale so that alpha([e1, e2]) = 1.
enum class PhiNormalization { DivideF1, DivideF2 };

HOperator phi_operator(const AdaptedFrame& frame, const PartialConnection& conn, const ContactForm& alpha,
                       const ReebField& r, Differentiator& d,
                       PhiNormalization norm = PhiNormalization::DivideF1);

HOperator psi_operator(const AdaptedFrame& frame, const ReebField& r, Differentiator& d,
                       const Constants& k = {});

/// pi_{-1}(zeta) = -2/5 Phi(zeta_1) + 7/5 Psi(zeta_1) + zeta_2.
HField project_minus1(const Decomposition& z, const HOperator& phi, const HOperator& psi, const ReebField& r,
                      Differentiator& d, const Constants& k = {});

/// Everything derived from one generalized contact form.
struct ContactData {
  Distribution dist;
  Constants constants;
  AdaptedFrame frame;
  ContactForm alpha;
  ReebField reeb;
  PartialConnection conn;
  ExtendedForm ext;
  HOperator phi;
  HOperator psi;
  std::array<Decomposition, kDim> coord_decomp;  // of d/dx^i
  std::array<HField, kDim> coord_proj;           // pi_{-1}(d/dx^i)
};

/// Runs the whole construction. Throws DegeneracyError (with the sample
/// point) when any frame or linear system degenerates.
ContactData build_contact_data(const Distribution& dist, const ContactForm& alpha, const Constants& k,
                               Differentiator& d);
/// Same, on a distribution whose frame is already built.
ContactData build_contact_data(const Distribution& dist, const AdaptedFrame& frame, const ContactForm& alpha,
                               const Constants& k, Differentiator& d);

/// Frame coefficients of nabla_x y - nabla_y x - ([x, y] - alpha([x, y]) r).
/// Vanishes identically for the connection of the Reeb field.
std::array<Expr, kDim> torsion_residual(const ContactData& data, const HField& x, const HField& y,
                                        Differentiator& d);

// --- transformation laws under alpha -> e^f alpha ------------------------------

/// The H-field delta with {g, delta} = 4 e^-f df(g) phi.
HField rescaling_delta(const Expr& f, const ContactData& base, Differentiator& d);

/// hat r = e^-f r + delta.
ReebField rescaled_reeb(const Expr& f, const ContactData& base, Differentiator& d);

/// hat alpha(zeta) = e^f (alpha(zeta) + 3 df(zeta_1)), on the coordinate fields.
/// The factor e^f multiplies both terms: hat alpha must kill [hat r, g], and
/// zeta_1 of [hat r, g] is e^-f g.
ExtendedForm rescaled_extension(const Expr& f, const ContactData& base, Differentiator& d);

/// hat pi(zeta) = pi(zeta) - 3/2 df(r) zeta_1 - 3/2 e^f df(zeta_1) delta - e^f alpha(zeta) delta.
HField rescaled_projection(const Expr& f, const Decomposition& z, const HField& pi, const ContactData& base,
                           Differentiator& d);

}  // namespace g235

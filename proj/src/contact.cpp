#include "g235/contact.hpp"

#include <cmath>
#include <utility>

namespace g235 {

namespace {

using Member = Rational Constants::*;

const std::vector<std::pair<std::string, Member>>& members() {
  static const std::vector<std::pair<std::string, Member>> table = {
      {"phi_weight", &Constants::phi_weight}, {"psi_weight", &Constants::psi_weight},
      {"metric_aa", &Constants::metric_aa},   {"ext_df", &Constants::ext_df},
      {"reeb_delta", &Constants::reeb_delta}, {"proj_dfr", &Constants::proj_dfr},
      {"proj_dfz", &Constants::proj_dfz},     {"psi_half", &Constants::psi_half},
  };
  return table;
}

Member find_member(std::string_view key) {
  for (const auto& [name, m] : members()) {
    if (name == key) return m;
  }
  throw InvariantViolation("unknown constant '" + std::string(key) + "'");
}

double checked_value(const Expr& e, const Point& p, std::size_t index, const std::string& what) {
  try {
    return evaluate(e, p);
  } catch (const DomainError& ex) {
    throw DegeneracyError(what + ": " + ex.what(), index);
  }
}

void guard_nonzero(const Expr& e, const std::vector<Point>& samples, const std::string& what) {
  if (e.is_zero()) throw DegeneracyError(what + " vanishes identically");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (std::abs(checked_value(e, samples[i], i, what)) < kDegenerateDet) throw DegeneracyError(what, i);
  }
}

HField simplified(const HField& h) { return {simplify_basic(h.a), simplify_basic(h.b)}; }

std::array<Expr, kDim> simplified(const std::array<Expr, kDim>& c) {
  std::array<Expr, kDim> out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = simplify_basic(c[i]);
  return out;
}

// Coefficients of a gr_{-3} class in the basis {f1, phi}, {f2, phi}. In the
// bracket frame {f_k, q(f3)} = q(f_{k+3}), so both basis images are phi e_k.
std::array<Expr, 2> solve_against_phi(const Expr& phi, const Gr3Coords& g) {
  return solve2(phi, Expr(0), Expr(0), phi, {g.c1, g.c2});
}

}  // namespace

// --- Constants --------------------------------------------------------------

const std::vector<std::string>& Constants::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [name, m] : members()) out.push_back(name);
    return out;
  }();
  return k;
}

Rational Constants::get(std::string_view key) const { return this->*find_member(key); }

void Constants::set(std::string_view key, const Rational& value) { this->*find_member(key) = value; }

bool Constants::is_standard() const {
  Constants ref;
  for (const auto& [name, m] : members()) {
    if (this->*m != ref.*m) return false;
  }
  return true;
}

// --- HField -----------------------------------------------------------------

HField operator+(const HField& x, const HField& y) { return {x.a + y.a, x.b + y.b}; }
HField operator-(const HField& x, const HField& y) { return {x.a - y.a, x.b - y.b}; }
HField operator*(const Expr& s, const HField& x) { return {s * x.a, s * x.b}; }

VectorField to_vector_field(const HField& h, const AdaptedFrame& frame) {
  return h.a * frame.f[0] + h.b * frame.f[1];
}

// --- contact forms ----------------------------------------------------------

ContactForm make_contact_form(const Expr& scale, const std::vector<Point>& samples) {
  if (scale.is_zero()) throw InvariantViolation("contact form scale is the zero expression");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double v = 0.0;
    try {
      v = evaluate(scale, samples[i]);
    } catch (const DomainError& ex) {
      throw InvariantViolation(std::string("contact form scale: ") + ex.what());
    }
    if (std::abs(v) <= kDegenerateDet) {
      throw InvariantViolation("contact form scale vanishes at sample point " + std::to_string(i));
    }
  }
  return ContactForm{scale};
}

ContactForm canonical_contact_form(const AdaptedFrame&) { return ContactForm{Expr(1)}; }

ContactForm rescaled_form(const ContactForm& alpha, const Expr& f) { return ContactForm{alpha.scale * exp(f)}; }

ContactForm negated_form(const ContactForm& alpha) { return ContactForm{-alpha.scale}; }

// --- sections of T^{-2}M ----------------------------------------------------

ReebField make_section(const AdaptedFrame& frame, const std::array<Expr, kDim>& coords, Differentiator& d) {
  ReebField s;
  s.coords = coords;
  s.coords[3] = Expr(0);
  s.coords[4] = Expr(0);
  s.phi = coords[2];
  s.r = simplified(frame.combine(s.coords));
  for (std::size_t i = 0; i < 2; ++i) {
    s.r_bracket[i] = simplified(lie_bracket(s.r, frame.f[i], d));
    s.r_bracket_coords[i] = simplified(frame.coords(s.r_bracket[i]));
  }
  return s;
}

PartialConnection partial_connection(const AdaptedFrame& frame, const ReebField& r, Differentiator& d) {
  guard_nonzero(r.phi, frame.samples, "q_{-2}(r)");
  PartialConnection conn;
  conn.phi = r.phi;
  for (std::size_t j = 0; j < 2; ++j) {
    VectorField inner = Expr(-1) * r.r_bracket[j];  // [f_j, r]
    for (std::size_t i = 0; i < 2; ++i) {
      VectorField outer = lie_bracket(frame.f[i], inner, d);
      auto sol = solve_against_phi(r.phi, solve_in_gr3(outer, frame));
      conn.gamma[0][i][j] = simplify_basic(sol[0]);
      conn.gamma[1][i][j] = simplify_basic(sol[1]);
    }
  }
  return conn;
}

HField covariant(const PartialConnection& conn, const AdaptedFrame& frame, const HField& x, const HField& y,
                 Differentiator& d) {
  const std::array<Expr, 2> xs{x.a, x.b};
  const std::array<Expr, 2> ys{y.a, y.b};
  std::array<Expr, 2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < 2; ++i) {
      if (xs[i].is_zero()) continue;
      std::vector<Expr> inner{apply(frame.f[i], ys[k], d)};
      for (std::size_t j = 0; j < 2; ++j) inner.push_back(ys[j] * conn.gamma[k][i][j]);
      terms.push_back(xs[i] * sum(inner));
    }
    out[k] = sum(terms);
  }
  return {out[0], out[1]};
}

std::array<Expr, 2> gr2_derivative(const PartialConnection& conn, const AdaptedFrame& frame, Differentiator& d) {
  std::array<Expr, 2> lambda;
  for (std::size_t i = 0; i < 2; ++i) {
    lambda[i] = simplify_basic(apply(frame.f[i], conn.phi, d) / conn.phi + conn.gamma[0][i][0] +
                               conn.gamma[1][i][1]);
  }
  return lambda;
}

// {f1, f2} = q(f3) and phi = phi3 q(f3)
Expr a_map(const Expr& phi) { return Expr(1) / phi; }

ReebField reeb_field(const AdaptedFrame& frame, const ContactForm& alpha, Differentiator& d) {
  guard_nonzero(alpha.scale, frame.samples, "contact form scale");
  Expr inv_scale = Expr(1) / alpha.scale;
  ReebField r0 = make_section(frame, {Expr(0), Expr(0), inv_scale, Expr(0), Expr(0)}, d);
  PartialConnection conn0 = partial_connection(frame, r0, d);
  auto lambda = gr2_derivative(conn0, frame, d);
  Expr a12 = a_map(r0.phi);
  guard_nonzero(a12, frame.samples, "a(f1, f2)");
  // {f_i, delta} = sum_j delta^j a(f_i, f_j) phi = -lambda_i phi
  auto delta = solve2(Expr(0), a12, -a12, Expr(0), {-lambda[0], -lambda[1]});
  return make_section(frame, {simplify_basic(delta[0]), simplify_basic(delta[1]), inv_scale, Expr(0), Expr(0)},
                      d);
}

// --- extension and decomposition ---------------------------------------------

Expr apply_form(const ExtendedForm& w, const VectorField& v) {
  std::vector<Expr> terms;
  for (int i = 0; i < kDim; ++i) {
    if (!w.c[static_cast<std::size_t>(i)].is_zero() && !v[i].is_zero()) {
      terms.push_back(w.c[static_cast<std::size_t>(i)] * v[i]);
    }
  }
  return sum(terms);
}

ExtendedForm extend_form(const AdaptedFrame& frame, const ContactForm&, const ReebField& r) {
  const std::array<const VectorField*, kDim> cols{&frame.f[0], &frame.f[1], &r.r, &r.r_bracket[0],
                                                  &r.r_bracket[1]};
  ExprMatrix m(kDim);
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t k = 0; k < kDim; ++k) m(i, k) = cols[k]->c[i];
  }
  Expr det = simplify_basic(determinant(m));
  guard_nonzero(det, frame.samples, "frame {f1, f2, r, [r,f1], [r,f2]}");
  // the row of the inverse dual to the r column
  ExtendedForm w;
  for (std::size_t j = 0; j < kDim; ++j) w.c[j] = simplify_basic(cofactor(m, j, 2) / det);
  return w;
}

Decomposition decompose(const VectorField& zeta, const AdaptedFrame& frame, const ExtendedForm& ext,
                        const ReebField& r, Differentiator& d) {
  auto cz = frame.coords(zeta);
  const auto& b1 = r.r_bracket_coords[0];
  const auto& b2 = r.r_bracket_coords[1];
  auto z = solve2(b1[3], b2[3], b1[4], b2[4], {cz[3], cz[4]});
  Decomposition out;
  out.zeta1 = {simplify_basic(z[0]), simplify_basic(z[1])};
  out.a0 = simplify_basic(apply_form(ext, zeta));
  // frame coefficients of [r, zeta_1] = z1 [r,f1] + z2 [r,f2] + (r.z1) f1 + (r.z2) f2
  std::array<Expr, kDim> w;
  for (std::size_t k = 0; k < kDim; ++k) {
    Expr t = cz[k] - out.zeta1.a * b1[k] - out.zeta1.b * b2[k] - out.a0 * r.coords[k];
    if (k == 0) t = t - apply(r.r, out.zeta1.a, d);
    if (k == 1) t = t - apply(r.r, out.zeta1.b, d);
    w[k] = t;
  }
  out.zeta2 = {simplify_basic(w[0]), simplify_basic(w[1])};
  out.residual = {w[2], w[3], w[4]};
  return out;
}

// --- Phi, Psi, projection ----------------------------------------------------

HField apply_operator(const HOperator& op, const HField& g, const ReebField& r, Differentiator& d) {
  return g.a * op.images[0] + g.b * op.images[1] + HField{apply(r.r, g.a, d), apply(r.r, g.b, d)};
}

HOperator phi_operator(const AdaptedFrame& frame, const PartialConnection& conn, const ContactForm& alpha,
                       const ReebField& r, Differentiator& d, PhiNormalization norm) {
  Expr inv_scale = Expr(1) / alpha.scale;
  Expr u1 = norm == PhiNormalization::DivideF1 ? inv_scale : Expr(1);
  Expr u2 = norm == PhiNormalization::DivideF1 ? Expr(1) : inv_scale;
  HField e1{u1, Expr(0)};
  HField e2{Expr(0), u2};
  // [e1, e2] = u1 u2 f3 + u1 (f1.u2) f2 - u2 (f2.u1) f1, and u1 u2 f3 - r lies in H
  HField h{-(u2 * apply(frame.f[1], u1, d)) - r.coords[0], u1 * apply(frame.f[0], u2, d) - r.coords[1]};
  h = simplified(h);
  HOperator op;
  op.kind = OperatorKind::Phi;
  for (std::size_t i = 0; i < 2; ++i) {
    HField g = i == 0 ? HField{Expr(1), Expr(0)} : HField{Expr(0), Expr(1)};
    HField a = covariant(conn, frame, e1, simplified(covariant(conn, frame, e2, g, d)), d);
    HField b = covariant(conn, frame, e2, simplified(covariant(conn, frame, e1, g, d)), d);
    HField c = covariant(conn, frame, h, g, d);
    op.images[i] = simplified(a - b - c);
  }
  return op;
}

HOperator psi_operator(const AdaptedFrame& frame, const ReebField& r, Differentiator& d, const Constants& k) {
  HOperator op;
  op.kind = OperatorKind::Psi;
  Expr half(k.psi_half);
  for (std::size_t i = 0; i < 2; ++i) {
    // [r, [f_i, r]] = -[r, [r, f_i]]
    VectorField outer = Expr(-1) * lie_bracket(r.r, r.r_bracket[i], d);
    auto g = solve_in_gr3(outer, frame);
    auto sol = solve_against_phi(r.phi, {half * g.c1, half * g.c2});
    op.images[i] = {simplify_basic(sol[0]), simplify_basic(sol[1])};
  }
  return op;
}

HField project_minus1(const Decomposition& z, const HOperator& phi, const HOperator& psi, const ReebField& r,
                      Differentiator& d, const Constants& k) {
  return Expr(k.phi_weight) * apply_operator(phi, z.zeta1, r, d) +
         Expr(k.psi_weight) * apply_operator(psi, z.zeta1, r, d) + z.zeta2;
}

// --- the whole construction ----------------------------------------------------

ContactData build_contact_data(const Distribution& dist, const ContactForm& alpha, const Constants& k,
                               Differentiator& d) {
  return build_contact_data(dist, adapted_frame(dist, d), alpha, k, d);
}

ContactData build_contact_data(const Distribution& dist, const AdaptedFrame& frame, const ContactForm& alpha,
                               const Constants& k, Differentiator& d) {
  ContactData data;
  data.dist = dist;
  data.constants = k;
  data.frame = frame;
  data.alpha = alpha;
  data.reeb = reeb_field(frame, alpha, d);
  data.conn = partial_connection(frame, data.reeb, d);
  data.ext = extend_form(frame, alpha, data.reeb);
  {
    const auto& b1 = data.reeb.r_bracket_coords[0];
    const auto& b2 = data.reeb.r_bracket_coords[1];
    guard_nonzero(simplify_basic(b1[3] * b2[4] - b2[3] * b1[4]), frame.samples, "q_{-3}([r,f1]), q_{-3}([r,f2])");
  }
  data.phi = phi_operator(frame, data.conn, alpha, data.reeb, d);
  data.psi = psi_operator(frame, data.reeb, d, k);
  for (int i = 0; i < kDim; ++i) {
    auto idx = static_cast<std::size_t>(i);
    VectorField zeta = VectorField::coordinate(i);
    data.coord_decomp[idx] = decompose(zeta, frame, data.ext, data.reeb, d);
    auto cz = frame.coords(zeta);
    for (std::size_t s = 0; s < frame.samples.size(); ++s) {
      Evaluator ev(frame.samples[s]);
      double scale = 1.0;
      for (const auto& c : cz) scale = std::max(scale, std::abs(ev(c)));
      for (const auto& res : data.coord_decomp[idx].residual) {
        if (std::abs(ev(res)) > kDecompositionResidual * scale) {
          throw DegeneracyError("decomposition leaves H (coordinate field " + std::to_string(i) + ")", s);
        }
      }
    }
    data.coord_proj[idx] = simplified(project_minus1(data.coord_decomp[idx], data.phi, data.psi, data.reeb, d, k));
  }
  return data;
}

std::array<Expr, kDim> torsion_residual(const ContactData& data, const HField& x, const HField& y,
                                        Differentiator& d) {
  const auto& fr = data.frame;
  HField t = covariant(data.conn, fr, x, y, d) - covariant(data.conn, fr, y, x, d);
  auto br = fr.coords(lie_bracket(to_vector_field(x, fr), to_vector_field(y, fr), d));
  Expr a = data.alpha.scale * br[2];
  std::array<Expr, kDim> out;
  for (std::size_t k = 0; k < kDim; ++k) out[k] = a * data.reeb.coords[k] - br[k];
  out[0] = t.a + out[0];
  out[1] = t.b + out[1];
  return out;
}

// --- transformation laws -----------------------------------------------------

HField rescaling_delta(const Expr& f, const ContactData& base, Differentiator& d) {
  const auto& fr = base.frame;
  Expr df1 = apply(fr.f[0], f, d);
  Expr df2 = apply(fr.f[1], f, d);
  Expr c = Expr(base.constants.reeb_delta) * exp(-f) / a_map(base.reeb.phi);
  return simplified(HField{-(c * df2), c * df1});
}

ReebField rescaled_reeb(const Expr& f, const ContactData& base, Differentiator& d) {
  HField delta = rescaling_delta(f, base, d);
  Expr e = exp(-f);
  std::array<Expr, kDim> coords;
  for (std::size_t k = 0; k < kDim; ++k) coords[k] = e * base.reeb.coords[k];
  coords[0] = simplify_basic(coords[0] + delta.a);
  coords[1] = simplify_basic(coords[1] + delta.b);
  coords[2] = simplify_basic(coords[2]);
  return make_section(base.frame, coords, d);
}

ExtendedForm rescaled_extension(const Expr& f, const ContactData& base, Differentiator& d) {
  Expr df1 = apply(base.frame.f[0], f, d);
  Expr df2 = apply(base.frame.f[1], f, d);
  Expr e = exp(f);
  Expr c(base.constants.ext_df);
  ExtendedForm w;
  for (std::size_t i = 0; i < kDim; ++i) {
    const auto& z1 = base.coord_decomp[i].zeta1;
    w.c[i] = simplify_basic(e * (base.ext.c[i] + c * (z1.a * df1 + z1.b * df2)));
  }
  return w;
}

HField rescaled_projection(const Expr& f, const Decomposition& z, const HField& pi, const ContactData& base,
                           Differentiator& d) {
  const auto& k = base.constants;
  HField delta = rescaling_delta(f, base, d);
  Expr e = exp(f);
  Expr dfr = apply(base.reeb.r, f, d);
  Expr dfz = z.zeta1.a * apply(base.frame.f[0], f, d) + z.zeta1.b * apply(base.frame.f[1], f, d);
  HField out = pi - (Expr(k.proj_dfr) * dfr) * z.zeta1 - (Expr(k.proj_dfz) * e * dfz) * delta - (e * z.a0) * delta;
  return simplified(out);
}

}  // namespace g235

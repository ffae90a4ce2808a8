#include "g235/metric.hpp"

#include <algorithm>
#include <cmath>

namespace g235 {

namespace {

Expr wedge(const HField& z, const HField& p) { return z.a * p.b - z.b * p.a; }

Eigen::Matrix<double, kDim, 1> values(const VectorField& v, Evaluator& ev) {
  Eigen::Matrix<double, kDim, 1> out;
  for (int i = 0; i < kDim; ++i) out(i) = ev(v[i]);
  return out;
}

double scaled_pairing(const Matrix5& g, const Eigen::Matrix<double, kDim, 1>& u,
                      const Eigen::Matrix<double, kDim, 1>& v) {
  double s = g.cwiseAbs().maxCoeff() * u.norm() * v.norm();
  return s > 0.0 ? u.dot(g * v) / s : 0.0;
}

}  // namespace

Distribution monge_distribution(const MongeSpec& spec, std::vector<Point> samples) {
  Distribution d{Chart::monge(), VectorField::coordinate(3), {}, std::move(samples)};
  d.eta.c = {Expr(1), Expr::var(2), Expr::var(3), Expr(0), spec.F};
  return d;
}

TwoForm exterior_derivative(const ExtendedForm& w, Differentiator& d) {
  TwoForm out;
  for (std::size_t i = 0; i < kDim; ++i) {
    out[i][i] = Expr(0);
    for (std::size_t j = i + 1; j < kDim; ++j) {
      Expr v = simplify_basic(d(w.c[j], static_cast<int>(i)) - d(w.c[i], static_cast<int>(j)));
      out[i][j] = v;
      out[j][i] = -v;
    }
  }
  return out;
}

Expr two_form_apply(const TwoForm& w, const VectorField& x, const VectorField& y) {
  std::vector<Expr> terms;
  for (int i = 0; i < kDim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < kDim; ++j) {
      const Expr& c = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c.is_zero() || y[j].is_zero()) continue;
      terms.push_back(x[i] * c * y[j]);
    }
  }
  return sum(terms);
}

namespace {

// c_pi * dw(z_i, pi_j) symmetrized, plus c_aa w_i w_j
MetricTensor assemble(const ContactData& data, Differentiator& d, const Expr& c_pi, const Expr& c_aa) {
  const auto& fr = data.frame;
  TwoForm dw = exterior_derivative(data.ext, d);
  Expr omega = simplify_basic(two_form_apply(dw, fr.f[0], fr.f[1]));
  MetricTensor m;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i; j < kDim; ++j) {
      const auto& zi = data.coord_decomp[i].zeta1;
      const auto& zj = data.coord_decomp[j].zeta1;
      Expr v = c_pi * omega * (wedge(zi, data.coord_proj[j]) + wedge(zj, data.coord_proj[i])) +
               c_aa * data.ext.c[i] * data.ext.c[j];
      m.g[i][j] = simplify_basic(v);
      m.g[j][i] = m.g[i][j];
    }
  }
  return m;
}

}  // namespace

MetricTensor assemble_metric(const ContactData& data, Differentiator& d) {
  return assemble(data, d, Expr(1), Expr(data.constants.metric_aa));
}

MetricTensor alternate_metric(const ContactData& data, Differentiator& d) {
  // -3 dw(pi, z_1) = 3 dw(z_1, pi)
  return assemble(data, d, Expr(3), Expr(-4));
}

Matrix5 metric_values(const MetricTensor& m, Evaluator& ev) {
  Matrix5 out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) out(i, j) = ev(m.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return out;
}

Matrix5 metric_values(const MetricTensor& m, const Point& p) {
  Evaluator ev(p);
  return metric_values(m, ev);
}

double relative_residual(const Matrix5& a, const Matrix5& b) {
  double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  double diff = (a - b).cwiseAbs().maxCoeff();
  if (scale == 0.0) return diff;
  return diff / scale;
}

SignatureEntry signature(const Matrix5& g) {
  Eigen::SelfAdjointEigenSolver<Matrix5> es(g);
  const auto& ev = es.eigenvalues();
  double norm = ev.cwiseAbs().maxCoeff();
  SignatureEntry e;
  e.det = g.determinant();
  for (int i = 0; i < kDim; ++i) {
    e.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
    if (!(norm > 0.0) || std::abs(ev(i)) < kDegenerateEigen * norm) {
      throw DegeneracyError("metric is degenerate (eigenvalue " + std::to_string(ev(i)) + ")");
    }
    if (ev(i) > 0) ++e.positive;
    else ++e.negative;
  }
  e.pass = e.positive == 2 && e.negative == 3;
  return e;
}

SignatureEntry signature(const MetricTensor& gm, const Point& p) {
  SignatureEntry e = signature(metric_values(gm, p));
  e.point = p;
  return e;
}

std::array<VectorField, 2> isotropic_complement(const ContactData& data) {
  const auto& k = data.constants;
  std::array<VectorField, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    HField a = Expr(k.phi_weight) * data.phi.images[i] + Expr(k.psi_weight) * data.psi.images[i];
    out[i] = data.reeb.r_bracket[i] - to_vector_field(a, data.frame);
  }
  return out;
}

SignatureReport signature_report(const ContactData& data, const MetricTensor& gm) {
  SignatureReport rep;
  rep.pass = !data.frame.samples.empty();
  auto kfields = isotropic_complement(data);
  for (const auto& p : data.frame.samples) {
    SignatureEntry e;
    try {
      Evaluator ev(p);
      Matrix5 g = metric_values(gm, ev);
      e = signature(g);
      std::array<Eigen::Matrix<double, kDim, 1>, 2> h{values(data.frame.f[0], ev), values(data.frame.f[1], ev)};
      std::array<Eigen::Matrix<double, kDim, 1>, 2> kv{values(kfields[0], ev), values(kfields[1], ev)};
      Eigen::Matrix2d pairing;
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          e.isotropy_h = std::max(e.isotropy_h, std::abs(scaled_pairing(g, h[a], h[b])));
          e.isotropy_k = std::max(e.isotropy_k, std::abs(scaled_pairing(g, kv[a], kv[b])));
          pairing(static_cast<int>(a), static_cast<int>(b)) = scaled_pairing(g, h[a], kv[b]);
        }
      }
      e.pairing_det = pairing.determinant();
      auto r = values(data.reeb.r, ev);
      e.g_rr = r.dot(g * r);
      e.pass = e.pass && e.isotropy_h < kIsotropyTol && e.isotropy_k < kIsotropyTol &&
               std::abs(e.pairing_det) > kPairingTol && e.g_rr < 0.0;
    } catch (const Error& ex) {
      e.error = ex.what();
      e.pass = false;
    }
    e.point = p;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

Pipeline run_pipeline(const Distribution& dist, const ContactForm& alpha, const Constants& k) {
  Pipeline p;
  p.diff = std::make_shared<Differentiator>();
  AdaptedFrame frame = adapted_frame(dist, *p.diff);
  p.data = build_contact_data(dist, frame, alpha, k, *p.diff);
  p.metric = assemble_metric(p.data, *p.diff);
  return p;
}

Pipeline run_pipeline(const Distribution& dist, const Constants& k) {
  Pipeline p;
  p.diff = std::make_shared<Differentiator>();
  AdaptedFrame frame = adapted_frame(dist, *p.diff);
  p.data = build_contact_data(dist, frame, canonical_contact_form(frame), k, *p.diff);
  p.metric = assemble_metric(p.data, *p.diff);
  return p;
}

ConformalReport verify_conformal(const Distribution& dist, const ContactForm& alpha, const Expr& f,
                                 const std::vector<Point>& points, const Constants& k, double tol) {
  Distribution dd = dist;
  dd.samples = points;
  Pipeline base = run_pipeline(dd, alpha, k);
  Pipeline resc = run_pipeline(dd, rescaled_form(alpha, f), k);
  Pipeline neg = run_pipeline(dd, negated_form(alpha), k);
  ConformalReport rep;
  rep.pass = !points.empty();
  for (const auto& p : points) {
    ConformalEntry e;
    e.point = p;
    try {
      Matrix5 g = metric_values(base.metric, p);
      Matrix5 gh = metric_values(resc.metric, p);
      Matrix5 gn = metric_values(neg.metric, p);
      double w = std::exp(2.0 * evaluate(f, p));
      e.conformal = relative_residual(gh, w * g);
      e.sign_flip = relative_residual(gn, g);
      e.pass = e.conformal < tol && e.sign_flip < tol;
    } catch (const Error& ex) {
      e.error = ex.what();
    }
    rep.max_conformal = std::max(rep.max_conformal, e.conformal);
    rep.max_sign_flip = std::max(rep.max_sign_flip, e.sign_flip);
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace g235

#include "g235/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace g235 {

Tolerances Tolerances::uniform(double tol) {
  Tolerances t;
  t.conformal = t.sign_flip = t.rescaling = t.torsion = t.factor_three = t.isotropy = tol;
  return t;
}

Expr random_polynomial(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::bernoulli_distribution keep(0.5);
  std::vector<Expr> terms;
  std::array<int, kDim> e{};
  // monomials in graded order
  std::function<void(int, int)> walk = [&](int var, int left) {
    if (var == kDim) {
      if (!keep(rng)) return;
      int k = coef(rng);
      if (k == 0) return;
      Expr t(Rational(k, 10));
      for (int i = 0; i < kDim; ++i) {
        if (e[static_cast<std::size_t>(i)] > 0) t = t * pow(Expr::var(i), e[static_cast<std::size_t>(i)]);
      }
      terms.push_back(t);
      return;
    }
    for (int p = 0; p <= left; ++p) {
      e[static_cast<std::size_t>(var)] = p;
      walk(var + 1, left - p);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  walk(0, max_degree);
  return sum(terms);
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    for (auto& c : p) c = u(rng);
  }
  return pts;
}

const PropertyCheck* PropertySuite::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

template <std::size_t N>
double relative(const std::array<double, N>& a, const std::array<double, N>& b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

std::array<double, kDim> values(const std::array<Expr, kDim>& c, Evaluator& ev) {
  std::array<double, kDim> out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = ev(c[i]);
  return out;
}

}  // namespace

double conformal_residual(const Pipeline& base, const Pipeline& rescaled, const Expr& f,
                          const std::vector<Point>& points) {
  double worst = 0.0;
  for (const auto& p : points) {
    double w = std::exp(2.0 * evaluate(f, p));
    worst = std::max(worst, relative_residual(metric_values(rescaled.metric, p), w * metric_values(base.metric, p)));
  }
  return worst;
}

double metric_residual(const MetricTensor& a, const MetricTensor& b, const std::vector<Point>& points) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, relative_residual(metric_values(a, p), metric_values(b, p)));
  return worst;
}

RescalingResiduals compare_rescaling_laws(const Pipeline& base, const Pipeline& rescaled, const Expr& f,
                                          const std::vector<Point>& points) {
  Differentiator& d = *base.diff;
  ReebField r = rescaled_reeb(f, base.data, d);
  ExtendedForm w = rescaled_extension(f, base.data, d);
  std::array<HField, kDim> pi;
  for (std::size_t i = 0; i < kDim; ++i) {
    pi[i] = rescaled_projection(f, base.data.coord_decomp[i], base.data.coord_proj[i], base.data, d);
  }
  RescalingResiduals out;
  for (const auto& p : points) {
    Evaluator ev(p);
    out.reeb = std::max(out.reeb, relative(values(r.r.c, ev), values(rescaled.data.reeb.r.c, ev)));
    out.extension = std::max(out.extension, relative(values(w.c, ev), values(rescaled.data.ext.c, ev)));
    std::array<double, 2 * kDim> a, b;
    for (std::size_t i = 0; i < kDim; ++i) {
      a[2 * i] = ev(pi[i].a);
      a[2 * i + 1] = ev(pi[i].b);
      b[2 * i] = ev(rescaled.data.coord_proj[i].a);
      b[2 * i + 1] = ev(rescaled.data.coord_proj[i].b);
    }
    out.projection = std::max(out.projection, relative(a, b));
  }
  return out;
}

double torsion_check(const Pipeline& p, const std::vector<HField>& extra, const std::vector<Point>& points) {
  std::vector<std::pair<HField, HField>> pairs{{HField{Expr(1), Expr(0)}, HField{Expr(0), Expr(1)}}};
  for (std::size_t i = 0; i < extra.size(); ++i) pairs.emplace_back(extra[i], extra[(i + 1) % extra.size()]);
  std::vector<std::array<Expr, kDim>> residuals;
  for (const auto& [x, y] : pairs) residuals.push_back(torsion_residual(p.data, x, y, *p.diff));
  double worst = 0.0;
  for (const auto& pt : points) {
    Evaluator ev(pt);
    for (const auto& r : residuals) {
      for (const auto& c : r) worst = std::max(worst, std::abs(ev(c)));
    }
  }
  return worst;
}

double alternate_metric_check(const Pipeline& p, const std::vector<Point>& points) {
  MetricTensor s = alternate_metric(p.data, *p.diff);
  double worst = 0.0;
  for (const auto& pt : points) {
    worst = std::max(worst, relative_residual(metric_values(s, pt), 3.0 * metric_values(p.metric, pt)));
  }
  return worst;
}

PropertySuite run_property_suite(const Distribution& dist, const Expr& f, const std::vector<Point>& points,
                                 const Constants& k, const Tolerances& tol, std::uint64_t seed) {
  Distribution dd = dist;
  dd.samples = points;
  Pipeline base = run_pipeline(dd, k);
  Pipeline resc = run_pipeline(dd, rescaled_form(base.data.alpha, f), k);
  Pipeline neg = run_pipeline(dd, negated_form(base.data.alpha), k);

  PropertySuite suite;
  auto add = [&](const std::string& name, double t, const std::function<double()>& run) {
    PropertyCheck c;
    c.name = name;
    c.tol = t;
    try {
      c.max_residual = run();
      c.pass = c.max_residual < t;
    } catch (const Error& e) {
      c.error = e.what();
    }
    suite.checks.push_back(std::move(c));
  };

  add("conformal", tol.conformal, [&] { return conformal_residual(base, resc, f, points); });
  add("sign_flip", tol.sign_flip, [&] { return metric_residual(neg.metric, base.metric, points); });
  RescalingResiduals laws;
  std::string laws_error;
  try {
    laws = compare_rescaling_laws(base, resc, f, points);
  } catch (const Error& e) {
    laws_error = e.what();
  }
  auto law = [&](double v) {
    if (!laws_error.empty()) throw Error(laws_error);
    return v;
  };
  add("rescaled_reeb", tol.rescaling, [&] { return law(laws.reeb); });
  add("rescaled_extension", tol.rescaling, [&] { return law(laws.extension); });
  add("rescaled_projection", tol.rescaling, [&] { return law(laws.projection); });
  add("torsion", tol.torsion, [&] {
    std::mt19937_64 rng(seed);
    std::vector<HField> extra;
    for (int i = 0; i < 5; ++i) extra.push_back({random_polynomial(rng), random_polynomial(rng)});
    return torsion_check(base, extra, points);
  });
  SignatureReport sig = signature_report(base.data, base.metric);
  {
    PropertyCheck c;
    c.name = "signature";
    c.tol = 0.0;
    c.pass = !sig.entries.empty();
    for (const auto& e : sig.entries) {
      if (!e.error.empty() && c.error.empty()) c.error = e.error;
      bool ok = e.error.empty() && e.positive == 2 && e.negative == 3;
      if (!ok) c.max_residual = 1.0;
      c.pass = c.pass && ok;
    }
    suite.checks.push_back(c);
  }
  add("isotropy", tol.isotropy, [&] {
    double worst = 0.0;
    for (const auto& e : sig.entries) {
      if (!e.error.empty()) throw Error(e.error);
      worst = std::max({worst, e.isotropy_h, e.isotropy_k});
    }
    return worst;
  });
  add("factor_three", tol.factor_three, [&] { return alternate_metric_check(base, points); });

  suite.pass = true;
  for (const auto& c : suite.checks) suite.pass = suite.pass && c.pass;
  return suite;
}

}  // namespace g235

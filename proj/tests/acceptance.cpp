// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "g235/g2.hpp"
#include "g235/verify.hpp"
#include "oracle/jet.hpp"

using namespace g235;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kFunctions = 5;
constexpr std::size_t kPoints = 10;

constexpr double kConformalTol = 1e-8;
constexpr double kConformalSeconds = 60.0;
constexpr double kIsotropyTolerance = 1e-9;
constexpr double kGrrTol = 1e-12;
constexpr double kSignFlipTol = 1e-10;
constexpr double kRescalingTol = 1e-8;
constexpr double kTorsionTol = 1e-9;
constexpr double kFactorThreeTol = 1e-10;
constexpr double kG2Seconds = 10.0;
constexpr int kG2Draws = 100;
constexpr double kOracleTol = 1e-9;
constexpr int kOracleOrder = 6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Model {
  std::string name;
  Distribution dist;
};

std::vector<Model> models() {
  Expr x = Expr::var(0), y = Expr::var(1), q = Expr::var(3);
  return {{"F=q^2", monge_distribution({pow(q, 2)})}, {"F=q^2+x*y", monge_distribution({pow(q, 2) + x * y})}};
}

/// One model, one f, its sample points and the three independent runs.
struct Case {
  std::string label;
  Distribution dist;
  Expr f;
  std::vector<Point> points;
  Pipeline base, rescaled, negated;
};

std::vector<Case> build_cases(const Constants& k) {
  std::mt19937_64 rng(kSeed);
  std::vector<Case> out;
  for (const auto& m : models()) {
    for (int n = 0; n < kFunctions; ++n) {
      Case c;
      c.f = random_polynomial(rng, 2);
      c.points = random_points(rng, kPoints);
      c.label = m.name + ", f=" + to_string(c.f, m.dist.chart);
      c.dist = m.dist;
      c.dist.samples = c.points;
      c.base = run_pipeline(c.dist, ContactForm{Expr(1)}, k);
      c.rescaled = run_pipeline(c.dist, rescaled_form(c.base.data.alpha, c.f), k);
      c.negated = run_pipeline(c.dist, negated_form(c.base.data.alpha), k);
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  std::string where;

  void record(double residual, double tol, const std::string& label) {
    if (residual > worst || !(residual == residual)) {
      worst = residual;
      where = label;
    }
    if (!(residual < tol)) pass = false;
  }
};

Outcome conformal(const std::vector<Case>& cases) {
  Outcome o;
  for (const auto& c : cases) o.record(conformal_residual(c.base, c.rescaled, c.f, c.points), kConformalTol, c.label);
  return o;
}

Outcome rescaling(const std::vector<Case>& cases) {
  Outcome o;
  for (const auto& c : cases) {
    auto r = compare_rescaling_laws(c.base, c.rescaled, c.f, c.points);
    o.record(r.reeb, kRescalingTol, c.label + " (reeb)");
    o.record(r.extension, kRescalingTol, c.label + " (extension)");
    o.record(r.projection, kRescalingTol, c.label + " (projection)");
  }
  return o;
}

Outcome factor_three(const std::vector<Case>& cases) {
  Outcome o;
  for (const auto& c : cases) o.record(alternate_metric_check(c.base, c.points), kFactorThreeTol, c.label);
  return o;
}

void line(int n, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string describe(const Outcome& o, double tol) {
  return "max residual " + sci(o.worst) + " (tol " + sci(tol) + ")" + (o.pass ? "" : " at " + o.where);
}

bool criterion_signature(const std::vector<Case>& cases) {
  bool ok = true;
  int bad_sig = 0;
  double iso = 0.0, grr = 0.0;
  bool grr_symbolic = true;
  for (const auto& c : cases) {
    auto rep = signature_report(c.base.data, c.base.metric);
    for (const auto& e : rep.entries) {
      if (!e.error.empty() || e.positive != 2 || e.negative != 3) ++bad_sig;
      iso = std::max({iso, e.isotropy_h, e.isotropy_k});
    }
    // g(r, r) symbolically, then numerically if the simplifier leaves a non-constant
    const auto& r = c.base.data.reeb.r;
    std::vector<Expr> terms;
    for (int a = 0; a < kDim; ++a) {
      for (int b = 0; b < kDim; ++b) terms.push_back(r[a] * c.base.metric.g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * r[b]);
    }
    Expr g_rr = simplify_basic(sum(terms));
    if (!(g_rr.op() == Op::Const && g_rr.value() == Rational(-4, 3))) {
      grr_symbolic = false;
      for (const auto& p : c.points) grr = std::max(grr, std::abs(evaluate(g_rr, p) + 4.0 / 3.0));
    }
  }
  ok = bad_sig == 0 && iso < kIsotropyTolerance && grr < kGrrTol;
  line(2, ok,
       std::to_string(bad_sig) + " points off (2,3); isotropy " + sci(iso) + " (tol " + sci(kIsotropyTolerance) +
           "); g(r,r) + 4/3 " + (grr_symbolic ? std::string("= 0 symbolically") : sci(grr)));
  return ok;
}

bool criterion_sign_flip(const std::vector<Case>& cases) {
  Outcome o;
  for (const auto& c : cases) {
    o.record(metric_residual(c.base.metric, c.negated.metric, c.points), kSignFlipTol, c.label);
  }
  line(3, o.pass, describe(o, kSignFlipTol));
  return o.pass;
}

bool criterion_torsion(const std::vector<Case>& cases) {
  std::mt19937_64 rng(kSeed + 5);
  Outcome o;
  for (const auto& c : cases) {
    std::vector<HField> extra;
    for (int n = 0; n < 5; ++n) extra.push_back({random_polynomial(rng, 2), random_polynomial(rng, 2)});
    o.record(torsion_check(c.base, extra, c.points), kTorsionTol, c.label);
  }
  line(5, o.pass, describe(o, kTorsionTol));
  return o.pass;
}

bool criterion_g2() {
  auto t0 = Clock::now();
  G2Report ids = check_identities(kSeed, kG2Draws);
  G2Report inv = check_invariants(kSeed, kG2Draws);
  double secs = seconds_since(t0);
  std::string failed;
  int checks = 0;
  for (const auto* rep : {&ids, &inv}) {
    for (const auto& c : rep->checks) {
      ++checks;
      if (!c.pass()) failed += (failed.empty() ? "" : ", ") + c.name + " " + std::to_string(c.failures) + "/" + std::to_string(c.draws);
    }
  }
  bool ok = failed.empty() && secs < kG2Seconds;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  line(7, ok, std::to_string(checks) + " exact checks in " + buf + (failed.empty() ? "" : "; failing: " + failed));
  return ok;
}

bool criterion_mutation() {
  // each constant nudged by +1/10; some check among 1, 4, 6 has to notice
  std::string missed, caught;
  for (const auto& key : Constants::keys()) {
    Constants k;
    k.set(key, k.get(key) + Rational(1, 10));
    std::string by;
    try {
      auto cases = build_cases(k);
      if (!conformal(cases).pass) by = "1";
      else if (!rescaling(cases).pass) by = "4";
      else if (!factor_three(cases).pass) by = "6";
    } catch (const Error& e) {
      // a crash is not a detection
      missed += (missed.empty() ? "" : ", ") + key + " (" + e.what() + ")";
      continue;
    }
    if (by.empty()) missed += (missed.empty() ? "" : ", ") + key;
    else caught += (caught.empty() ? "" : " ") + key + "->" + by;
  }
  bool ok = missed.empty();
  line(8, ok, caught + (missed.empty() ? "" : "; undetected: " + missed));
  return ok;
}

bool criterion_oracle() {
  const Point base{0, 0, 0, 1, 0};
  Distribution d = models()[0].dist;
  d.samples = {base};
  Pipeline p = run_pipeline(d);
  Matrix5 g = metric_values(p.metric, base);
  oracle::JetSpace space(kOracleOrder);
  auto pm = oracle::pointwise_metric(space, d.xi.c, d.eta.c, base);
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      worst = std::max(worst, std::abs(g(i, j) - pm.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
  }
  bool ok = pm.min_valid >= 0 && worst < kOracleTol;
  line(9, ok, "max entry difference " + sci(worst) + " (tol " + sci(kOracleTol) + ")");
  return ok;
}

}  // namespace

int main() {
  bool all = true;
  auto t0 = Clock::now();
  std::vector<Case> cases;
  try {
    cases = build_cases(Constants{});
  } catch (const Error& e) {
    std::printf("setup failed: %s\n", e.what());
    return 1;
  }
  Outcome c1 = conformal(cases);
  double secs = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %zu cases in %.1f s", cases.size(), secs);
  bool ok1 = c1.pass && secs < kConformalSeconds;
  line(1, ok1, describe(c1, kConformalTol) + buf);
  all &= ok1;

  all &= criterion_signature(cases);
  all &= criterion_sign_flip(cases);

  Outcome c4 = rescaling(cases);
  line(4, c4.pass, describe(c4, kRescalingTol));
  all &= c4.pass;

  all &= criterion_torsion(cases);

  Outcome c6 = factor_three(cases);
  line(6, c6.pass, describe(c6, kFactorThreeTol));
  all &= c6.pass;

  all &= criterion_g2();
  all &= criterion_mutation();
  all &= criterion_oracle();
  return all ? 0 : 1;
}

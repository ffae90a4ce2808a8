#include "g235/commands.hpp"

#include <cctype>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "g235/g2.hpp"
#include "g235/metric.hpp"
#include "g235/verify.hpp"

namespace g235 {

using nlohmann::ordered_json;

namespace {

// -0.0 prints as "-0"; reports should not
double unsigned_zero(double v) { return v == 0.0 ? 0.0 : v; }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, unsigned_zero(v));
  return buf;
}

ordered_json point_json(const Point& p) { return ordered_json(std::vector<double>(p.begin(), p.end())); }

ordered_json matrix_json(const Matrix5& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < kDim; ++i) {
    std::vector<double> r;
    for (int j = 0; j < kDim; ++j) r.push_back(unsigned_zero(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

ordered_json constants_json(const Constants& k) {
  ordered_json out = ordered_json::object();
  for (const auto& key : Constants::keys()) out[key] = k.get(key).get_str();
  return out;
}

std::uint64_t seed_of(const ProblemSpec* spec, const CommandOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (spec && spec->seed) return *spec->seed;
  return kDefaultSeed;
}

std::string point_label(const NamedPoint& p) {
  std::ostringstream os;
  os << p.name << " (";
  for (std::size_t i = 0; i < kDim; ++i) os << (i ? ", " : "") << p.value[i];
  os << ")";
  return os.str();
}

void require_points(const ProblemSpec& spec) {
  if (spec.points.empty()) throw InputError("this command needs at least one entry under [points]");
}

ordered_json header(const std::string& command, const CommandOptions& opt) {
  ordered_json j;
  j["command"] = command;
  if (!opt.constants.is_standard()) j["constants"] = constants_json(opt.constants);
  return j;
}

ordered_json signature_json(const SignatureEntry& e) {
  ordered_json j;
  if (!e.error.empty()) {
    j["error"] = e.error;
    j["pass"] = false;
    return j;
  }
  j["positive"] = e.positive;
  j["negative"] = e.negative;
  j["det"] = e.det;
  j["eigenvalues"] = std::vector<double>(e.eigenvalues.begin(), e.eigenvalues.end());
  j["isotropy_h"] = e.isotropy_h;
  j["isotropy_k"] = e.isotropy_k;
  j["pairing_det"] = e.pairing_det;
  j["g_rr"] = e.g_rr;
  j["pass"] = e.pass;
  return j;
}

CommandResult finish(ordered_json j, bool pass, std::string summary) {
  j["pass"] = pass;
  return {pass ? kExitPass : kExitFail, j.dump(2) + "\n", std::move(summary)};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto bad = [&] { return InputError("not a rational number: '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw bad();
    r.canonicalize();
    return r;
  }
  // decimal with optional exponent
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      any = true;
      if (dot) --scale;
    } else {
      throw bad();
    }
  }
  if (!any) throw bad();
  if (i < s.size()) {
    std::string ex = s.substr(i + 1);
    if (ex.empty()) throw bad();
    try {
      std::size_t used = 0;
      long e = std::stol(ex, &used);
      if (used != ex.size() || e > 1000 || e < -1000) throw bad();
      scale += e;
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  mpz_class num(digits, 10), ten = 10, p = 1;
  for (long k = 0; k < (scale < 0 ? -scale : scale); ++k) p *= ten;
  Rational r = scale < 0 ? Rational(num, p) : Rational(num * p);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

void apply_mutation(Constants& k, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw InputError("--mutate expects KEY=VALUE");
  std::string key(assignment.substr(0, eq));
  key.erase(key.find_last_not_of(" \t") + 1);
  key.erase(0, key.find_first_not_of(" \t"));
  try {
    k.set(key, parse_rational(assignment.substr(eq + 1)));
  } catch (const InvariantViolation& e) {
    throw InputError(e.what());
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UnknownIdentifier*>(&e) ||
      dynamic_cast<const InputError*>(&e) || dynamic_cast<const ChartMismatch*>(&e) ||
      dynamic_cast<const InvariantViolation*>(&e)) {
    return kExitInput;
  }
  if (dynamic_cast<const DegeneracyError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitDegenerate;
  return kExitFail;
}

CommandResult cmd_check(const ProblemSpec& spec, const CommandOptions& opt) {
  require_points(spec);
  Distribution dist = spec.distribution();
  GenericityReport rep = check_generic(dist, spec.sample_points());
  ordered_json j = header("check", opt);
  ordered_json rows = ordered_json::array();
  std::ostringstream os;
  os << "point                          growth      |det|        status\n";
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& e = rep.entries[i];
    ordered_json r;
    r["name"] = spec.points[i].name;
    r["point"] = point_json(e.point);
    r["growth"] = {e.rank_h, e.rank_h2, e.rank_full};
    r["abs_det"] = e.abs_det;
    if (!e.error.empty()) r["error"] = e.error;
    r["pass"] = e.pass;
    rows.push_back(r);
    char line[160];
    std::snprintf(line, sizeof line, "%-30s (%d,%d,%d)     %-12.4g %s\n", point_label(spec.points[i]).c_str(),
                  e.rank_h, e.rank_h2, e.rank_full, e.abs_det, e.pass ? "ok" : "FAIL");
    os << line;
    if (!e.error.empty()) os << "    " << e.error << "\n";
  }
  j["points"] = rows;
  os << (rep.pass ? "growth (2,3,5) at every point\n" : "distribution is not generic at every point\n");
  return finish(std::move(j), rep.pass, os.str());
}

CommandResult cmd_metric(const ProblemSpec& spec, const CommandOptions& opt) {
  require_points(spec);
  Distribution dist = spec.distribution();
  Pipeline p = run_pipeline(dist, opt.constants);
  SignatureReport sig = signature_report(p.data, p.metric);
  const Chart& chart = spec.chart;

  ordered_json j = header("metric", opt);
  ordered_json comps = ordered_json::array();
  std::ostringstream os;
  os << "metric components (coordinate basis)\n";
  for (int a = 0; a < kDim; ++a) {
    for (int b = a; b < kDim; ++b) {
      std::string text = to_string(p.metric.g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], chart);
      comps.push_back({{"i", chart.name(a)}, {"j", chart.name(b)}, {"expr", text}});
      os << "  g[" << chart.name(a) << "," << chart.name(b) << "] = " << text << "\n";
    }
  }
  j["components"] = comps;

  bool degenerate = false;
  ordered_json pts = ordered_json::array();
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const auto& e = sig.entries[i];
    ordered_json r;
    r["name"] = spec.points[i].name;
    r["point"] = point_json(spec.points[i].value);
    try {
      r["values"] = matrix_json(metric_values(p.metric, spec.points[i].value));
    } catch (const Error& ex) {
      r["values_error"] = ex.what();
    }
    r["signature"] = signature_json(e);
    pts.push_back(r);
    os << point_label(spec.points[i]) << ": ";
    if (!e.error.empty()) {
      degenerate = true;
      os << "error: " << e.error << "\n";
    } else {
      os << "signature (" << e.positive << "," << e.negative << ")  g(r,r) = " << fmt("%.12g", e.g_rr)
         << "  isotropy " << fmt("%.2e", std::max(e.isotropy_h, e.isotropy_k)) << (e.pass ? "  ok" : "  FAIL")
         << "\n";
    }
  }
  j["points"] = pts;
  CommandResult res = finish(std::move(j), sig.pass, os.str());
  if (degenerate) res.status = kExitDegenerate;
  return res;
}

CommandResult cmd_verify(const ProblemSpec& spec, const CommandOptions& opt) {
  require_points(spec);
  std::uint64_t seed = seed_of(&spec, opt);
  Expr f;
  if (auto given = spec.rescale_function()) {
    f = *given;
  } else {
    std::mt19937_64 rng(seed);
    f = random_polynomial(rng);
  }
  Tolerances tol = opt.tol ? Tolerances::uniform(*opt.tol) : spec.tolerances();
  PropertySuite suite = run_property_suite(spec.distribution(), f, spec.sample_points(), opt.constants, tol, seed);

  ordered_json j = header("verify", opt);
  j["seed"] = seed;
  j["f"] = to_string(f, spec.chart);
  j["points"] = spec.points.size();
  ordered_json checks = ordered_json::array();
  std::ostringstream os;
  os << "f = " << to_string(f, spec.chart) << "\n";
  os << "check                 max residual   tolerance   status\n";
  for (const auto& c : suite.checks) {
    ordered_json r{{"name", c.name}, {"max_residual", c.max_residual}, {"tol", c.tol}, {"pass", c.pass}};
    if (!c.error.empty()) r["error"] = c.error;
    checks.push_back(r);
    char line[160];
    std::snprintf(line, sizeof line, "%-21s %-14.3e %-11.1e %s\n", c.name.c_str(), c.max_residual, c.tol,
                  c.pass ? "ok" : "FAIL");
    os << line;
    if (!c.error.empty()) os << "    " << c.error << "\n";
  }
  j["checks"] = checks;
  return finish(std::move(j), suite.pass, os.str());
}

CommandResult cmd_eval(const ProblemSpec& spec, const CommandOptions& opt) {
  if (!opt.point) throw InputError("eval needs --point x0,x1,x2,x3,x4");
  Distribution dist = spec.distribution();
  dist.samples = {*opt.point};
  Pipeline p = run_pipeline(dist, opt.constants);
  Evaluator ev(*opt.point);
  Matrix5 g = metric_values(p.metric, ev);
  SignatureReport sig = signature_report(p.data, p.metric);
  const auto& e = sig.entries.front();

  std::vector<double> r, w;
  for (int i = 0; i < kDim; ++i) {
    r.push_back(unsigned_zero(ev(p.data.reeb.r[i])));
    w.push_back(unsigned_zero(ev(p.data.ext.c[static_cast<std::size_t>(i)])));
  }
  ordered_json j = header("eval", opt);
  j["point"] = point_json(*opt.point);
  j["metric"] = matrix_json(g);
  j["reeb"] = r;
  j["extended_form"] = w;
  j["signature"] = signature_json(e);

  std::ostringstream os;
  os << "metric at (";
  for (int i = 0; i < kDim; ++i) os << (i ? ", " : "") << (*opt.point)[static_cast<std::size_t>(i)];
  os << ")\n";
  for (int a = 0; a < kDim; ++a) {
    os << " ";
    for (int b = 0; b < kDim; ++b) os << fmt(" %12.6g", g(a, b));
    os << "\n";
  }
  os << "reeb field     ";
  for (double v : r) os << fmt(" %10.6g", v);
  os << "\nextended form  ";
  for (double v : w) os << fmt(" %10.6g", v);
  os << "\n";
  if (!e.error.empty()) {
    os << "error: " << e.error << "\n";
    CommandResult res = finish(std::move(j), false, os.str());
    res.status = kExitDegenerate;
    return res;
  }
  os << "signature (" << e.positive << "," << e.negative << ")  g(r,r) = " << fmt("%.12g", e.g_rr) << "\n";
  return finish(std::move(j), e.pass, os.str());
}

CommandResult cmd_g2_selftest(const CommandOptions& opt) {
  std::uint64_t seed = seed_of(nullptr, opt);
  G2Report ids = check_identities(seed);
  G2Report inv = check_invariants(seed);

  ordered_json j = header("g2-selftest", opt);
  j["seed"] = seed;
  std::ostringstream os;
  os << "check            draws  failures\n";
  auto table = [&](const G2Report& rep) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.checks) {
      ordered_json r{{"name", c.name}, {"draws", c.draws}, {"failures", c.failures}, {"pass", c.pass()}};
      if (!c.first_failure.empty()) r["first_failure"] = c.first_failure;
      arr.push_back(r);
      char line[128];
      std::snprintf(line, sizeof line, "%-16s %5d  %8d  %s\n", c.name.c_str(), c.draws, c.failures,
                    c.pass() ? "ok" : "FAIL");
      os << line;
      if (!c.first_failure.empty()) os << "    first failure: " << c.first_failure << "\n";
    }
    return arr;
  };
  j["identities"] = table(ids);
  j["invariants"] = table(inv);

  // closed forms of the pairing on the standard examples
  G2Params x, z, r, s, y, w;
  x.X = {QSqrt2(1), QSqrt2(0)};
  z.Z = {QSqrt2(1), QSqrt2(0)};
  r.r = QSqrt2(1);
  s.s = QSqrt2(1);
  y.Y = {QSqrt2(0), QSqrt2(3)};
  w.W = {QSqrt2(0), QSqrt2(1)};
  ordered_json pairs = ordered_json::array();
  os << "pairing  B(X=(1,0),Z=(1,0)) = " << pairing_B(x, z).to_string() << "   (ZX)\n";
  os << "         B(r=1,s=1)         = " << pairing_B(r, s).to_string() << "   (rs/2)\n";
  os << "         B(Y=(0,3),W=(0,1)) = " << pairing_B(y, w).to_string() << "   (WY/3)\n";
  pairs.push_back({{"pair", "X,Z"}, {"closed_form", "ZX"}, {"value", pairing_B(x, z).to_string()}});
  pairs.push_back({{"pair", "r,s"}, {"closed_form", "rs/2"}, {"value", pairing_B(r, s).to_string()}});
  pairs.push_back({{"pair", "Y,W"}, {"closed_form", "WY/3"}, {"value", pairing_B(y, w).to_string()}});
  j["pairings"] = pairs;

  int total = 0;
  for (int d : inv.dims) total += d;
  j["grading_dims"] = inv.dims;
  j["dimension"] = total;
  os << "grading dims (";
  for (std::size_t i = 0; i < inv.dims.size(); ++i) os << (i ? "," : "") << inv.dims[i];
  os << "), total " << total << "\n";
  return finish(std::move(j), ids.pass && inv.pass, os.str());
}

CommandResult run_command(const std::string& command, const std::function<ProblemSpec()>& load,
                          const CommandOptions& opt) {
  try {
    if (command == "g2-selftest") return cmd_g2_selftest(opt);
    if (command != "check" && command != "metric" && command != "verify" && command != "eval") {
      throw InputError("unknown command '" + command + "'");
    }
    ProblemSpec spec = load();
    if (command == "check") return cmd_check(spec, opt);
    if (command == "metric") return cmd_metric(spec, opt);
    if (command == "verify") return cmd_verify(spec, opt);
    return cmd_eval(spec, opt);
  } catch (const std::exception& e) {
    int code = exit_code_for(e);
    ordered_json j{{"command", command}, {"error", e.what()}, {"pass", false}};
    return {code, j.dump(2) + "\n", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace g235

#include "g235/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "g235/metric.hpp"

namespace g235 {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto c = s.find(',', start);
    out.emplace_back(trim(s.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start)));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::size_t line) {
  std::string s(trim(text));
  if (s.empty()) throw InputError("expected a number", line);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'", line);
  }
  if (used != s.size() || !std::isfinite(v)) throw InputError("not a finite number: '" + s + "'", line);
  return v;
}

VectorField parse_field(const std::string& text, const Chart& chart, std::size_t line) {
  auto parts = split_commas(text);
  if (parts.size() != kDim) {
    throw InputError("expected 5 comma separated components, got " + std::to_string(parts.size()), line);
  }
  VectorField v;
  for (std::size_t i = 0; i < kDim; ++i) v.c[i] = parse_expression(parts[i], chart);
  return v;
}

enum class Section { None, Chart, Frame, Monge, Rescale, Points, Options };

}  // namespace

Point parse_point(std::string_view text) {
  auto parts = split_commas(text);
  if (parts.size() != kDim) {
    throw InputError("a point needs 5 coordinates, got " + std::to_string(parts.size()));
  }
  Point p;
  for (std::size_t i = 0; i < kDim; ++i) p[i] = parse_double(parts[i], 0);
  return p;
}

std::vector<Point> ProblemSpec::sample_points() const {
  std::vector<Point> out;
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

Distribution ProblemSpec::distribution() const {
  if (monge_f) return monge_distribution({parse_expression(*monge_f, chart)}, sample_points());
  if (!frame) throw InputError("problem has neither [frame] nor [monge]");
  return Distribution{chart, parse_field(frame->first, chart, 0), parse_field(frame->second, chart, 0),
                      sample_points()};
}

std::optional<Expr> ProblemSpec::rescale_function() const {
  if (!rescale) return std::nullopt;
  return parse_expression(*rescale, chart);
}

Tolerances ProblemSpec::tolerances() const {
  Tolerances t = tol ? Tolerances::uniform(*tol) : Tolerances{};
  for (const auto& [key, v] : tol_overrides) {
    if (key == "conformal") t.conformal = v;
    else if (key == "sign_flip") t.sign_flip = v;
    else if (key == "rescaling") t.rescaling = v;
    else if (key == "torsion") t.torsion = v;
    else if (key == "factor_three") t.factor_three = v;
    else if (key == "isotropy") t.isotropy = v;
    else throw InputError("unknown tolerance 'tol." + key + "'");
  }
  return t;
}

ProblemSpec parse_problem(std::string_view text) {
  ProblemSpec spec;
  Section section = Section::None;
  bool seen_chart = false;
  std::optional<std::string> xi, eta;
  std::size_t xi_line = 0, eta_line = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw InputError("unterminated section header", line_no);
      auto name = trim(line.substr(1, line.size() - 2));
      if (name == "chart") section = Section::Chart;
      else if (name == "frame") section = Section::Frame;
      else if (name == "monge") section = Section::Monge;
      else if (name == "rescale") section = Section::Rescale;
      else if (name == "points") section = Section::Points;
      else if (name == "options") section = Section::Options;
      else throw InputError("unknown section [" + std::string(name) + "]", line_no);
      continue;
    }

    auto eq = line.find('=');
    std::string key, value;
    if (eq == std::string_view::npos) {
      if (section != Section::Points) throw InputError("expected 'key = value'", line_no);
      key = "p" + std::to_string(spec.points.size());
      value = std::string(line);
    } else {
      key = std::string(trim(line.substr(0, eq)));
      value = std::string(trim(line.substr(eq + 1)));
    }
    if (key.empty()) throw InputError("empty key", line_no);

    switch (section) {
      case Section::None:
        throw InputError("'" + key + "' outside any section", line_no);
      case Section::Chart: {
        if (key != "names") throw InputError("unknown chart key '" + key + "'", line_no);
        try {
          spec.chart = Chart(split_commas(value));
        } catch (const InvariantViolation& e) {
          throw InputError(e.what(), line_no);
        }
        seen_chart = true;
        break;
      }
      case Section::Frame:
        if (key == "xi") xi = value, xi_line = line_no;
        else if (key == "eta") eta = value, eta_line = line_no;
        else throw InputError("unknown frame key '" + key + "'", line_no);
        break;
      case Section::Monge:
        if (key != "F") throw InputError("unknown monge key '" + key + "'", line_no);
        spec.monge_f = value;
        break;
      case Section::Rescale:
        if (key != "f") throw InputError("unknown rescale key '" + key + "'", line_no);
        spec.rescale = value;
        break;
      case Section::Points: {
        NamedPoint p{key, {}};
        try {
          p.value = parse_point(value);
        } catch (const InputError& e) {
          throw InputError(e.what(), line_no);
        }
        spec.points.push_back(std::move(p));
        break;
      }
      case Section::Options:
        if (key == "tol") {
          spec.tol = parse_double(value, line_no);
        } else if (key.rfind("tol.", 0) == 0) {
          spec.tol_overrides.emplace_back(key.substr(4), parse_double(value, line_no));
        } else if (key == "seed") {
          std::uint64_t s = 0;
          auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
          if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw InputError("seed must be an unsigned integer", line_no);
          }
          spec.seed = s;
        } else {
          throw InputError("unknown option '" + key + "'", line_no);
        }
        break;
    }
  }

  if (xi.has_value() != eta.has_value()) throw InputError("[frame] needs both xi and eta");
  if (xi) spec.frame = std::make_pair(*xi, *eta);
  if (spec.frame && spec.monge_f) throw InputError("give either [frame] or [monge], not both");
  if (!spec.frame && !spec.monge_f) throw InputError("missing [frame] or [monge] section");
  if (spec.monge_f && seen_chart && !(spec.chart == Chart::monge())) {
    throw ChartMismatch("a [monge] problem uses the chart x, y, p, q, z");
  }

  // validate every expression now so errors point at the file
  if (spec.monge_f) parse_expression(*spec.monge_f, spec.chart);
  if (spec.frame) {
    parse_field(spec.frame->first, spec.chart, xi_line);
    parse_field(spec.frame->second, spec.chart, eta_line);
  }
  if (spec.rescale) parse_expression(*spec.rescale, spec.chart);
  spec.tolerances();
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace g235

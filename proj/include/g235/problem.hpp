#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g235/distribution.hpp"
#include "g235/verify.hpp"

namespace g235 {

// Problem files are line-oriented:
//
//   # Hilbert-Cartan
//   [monge]
//   F = q^2
//   [rescale]
//   f = x*q
//   [points]
//   a = 0, 0, 0, 1, 0
//   [options]
//   tol = 1e-8
//   seed = 7
//
// A [frame] section (xi = ..., eta = ..., five comma separated expressions
// each) replaces [monge]; [chart] names = ... sets the coordinate names.

struct NamedPoint {
  std::string name;
  Point value{};
};

struct ProblemSpec {
  Chart chart;
  std::optional<std::string> monge_f;              // DSL text of F
  std::optional<std::pair<std::string, std::string>> frame;  // xi, eta, comma separated
  std::optional<std::string> rescale;              // DSL text of f
  std::vector<NamedPoint> points;
  std::optional<double> tol;                       // uniform override
  std::vector<std::pair<std::string, double>> tol_overrides;  // tol.<check> = value
  std::optional<std::uint64_t> seed;

  std::vector<Point> sample_points() const;
  /// The distribution with `sample_points()` as samples.
  Distribution distribution() const;
  /// Parsed rescale function, if any.
  std::optional<Expr> rescale_function() const;
  /// Pinned defaults, then `tol`, then the per-check overrides.
  Tolerances tolerances() const;
};

/// Throws InputError, ParseError or UnknownIdentifier.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::string& path);

/// "a, b, c, d, e" as a point; throws InputError.
Point parse_point(std::string_view text);

}  // namespace g235

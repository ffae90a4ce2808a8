// Command-line front end: g235 <command> --spec problem.txt [options]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "g235/commands.hpp"

int main(int argc, char** argv) {
  using namespace g235;

  CLI::App app{"Conformal structures of generic rank-2 distributions in dimension five"};
  app.require_subcommand(1);

  std::string spec_path, json_path, point_text;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::vector<std::string> mutations;

  app.add_option("--spec", spec_path, "problem file");
  app.add_option("--seed", seed, "seed for random draws");
  app.add_option("--tol", tol, "replace every tolerance");
  app.add_option("--json", json_path, "write the report here");
  app.add_option("--mutate", mutations, "override a constant, KEY=VALUE (debugging)")->take_all();

  app.add_subcommand("check", "growth vector at the sample points");
  app.add_subcommand("metric", "metric components and signature");
  app.add_subcommand("verify", "run the property suite");
  app.add_subcommand("g2-selftest", "exact checks of the 14-dimensional algebra");
  auto* eval = app.add_subcommand("eval", "all pipeline outputs at one point");
  eval->add_option("--point", point_text, "x0,x1,x2,x3,x4")->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CommandOptions opt;
  opt.seed = seed;
  opt.tol = tol;
  try {
    for (const auto& m : mutations) apply_mutation(opt.constants, m);
    if (!point_text.empty()) opt.point = parse_point(point_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto load = [&]() -> ProblemSpec {
    if (spec_path.empty()) throw InputError("--spec is required for '" + command + "'");
    return load_problem(spec_path);
  };
  CommandResult res = run_command(command, load, opt);

  (res.status == kExitInput || res.status == kExitDegenerate ? std::cerr : std::cout) << res.summary;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write '" << json_path << "'\n";
      return kExitInput;
    }
    out << res.json;
  }
  return res.status;
}

#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "g235/contact.hpp"
#include "g235/problem.hpp"

namespace g235 {

/// Process exit codes shared by every command.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitDegenerate = 3 };

struct CommandOptions {
  std::optional<std::uint64_t> seed;  // overrides the problem's seed
  std::optional<double> tol;          // overrides every tolerance
  Constants constants;                // mutated via --mutate
  std::optional<Point> point;         // eval only
};

/// `json` is the machine-readable report (deterministic for fixed inputs),
/// `summary` the human-readable table.
struct CommandResult {
  int status = kExitPass;
  std::string json;
  std::string summary;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

CommandResult cmd_check(const ProblemSpec& spec, const CommandOptions& opt);
CommandResult cmd_metric(const ProblemSpec& spec, const CommandOptions& opt);
CommandResult cmd_verify(const ProblemSpec& spec, const CommandOptions& opt);
CommandResult cmd_eval(const ProblemSpec& spec, const CommandOptions& opt);
CommandResult cmd_g2_selftest(const CommandOptions& opt);

/// Dispatches on the command name; exceptions become status 2 or 3 with an
/// error report. `load` is only called by commands that need a problem.
CommandResult run_command(const std::string& command, const std::function<ProblemSpec()>& load,
                          const CommandOptions& opt);

/// 2 for malformed input, 3 for degeneracies, 1 otherwise.
int exit_code_for(const std::exception& e);

/// "-1/2", "3", "0.25" or "1e-3" as an exact rational; throws InputError.
Rational parse_rational(std::string_view text);

/// Applies "KEY=VALUE" to `k`; throws InputError for unknown keys.
void apply_mutation(Constants& k, std::string_view assignment);

}  // namespace g235

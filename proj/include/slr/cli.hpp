#pragma once

#include "solvers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slr::cli {

/// Process exit codes, stable for scripting.
enum ExitCode : int
{
  kOk = 0,
  kUsage = 2,   // bad flags or configuration
  kData = 3,    // unreadable / mismatched data files
  kNumeric = 4, // non-finite values during a solve
};

struct ConfigFile
{
  SolverConfig config;
  std::optional<SolverKind> solver;
};

/// Flat key=value text, one entry per line; '#' starts a comment.
std::string format_config(SolverConfig const &cfg, std::optional<SolverKind> solver = std::nullopt);
/// Keys absent from the text keep their value from `base`. Unknown keys are errors.
ConfigFile parse_config(std::string const &text, SolverConfig const &base);

/// "lambda1=0,1e-3;rank_k=1,2" -> one axis per ';'-separated entry.
/// Throws ConfigError naming the offending token.
std::vector<SearchAxis> parse_grid(std::string const &grid);

/// Entry point shared by the executable and the tests.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace slr::cli

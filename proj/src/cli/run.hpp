#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/spec.hpp"

namespace pfc {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDowngraded = 2;

// Runs one subcommand; output goes to spec.out or `out`, diagnostics to `err`.
int run_spec(const ProblemSpec& spec, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfc

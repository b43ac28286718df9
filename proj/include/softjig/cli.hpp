#pragma once

#include "softjig/config.hpp"

namespace softjig {

// Exit codes: 0 success, 1 analysis-negative, 2 usage/config error.
int cmd_verify(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_pullout(const RunConfig& config);
int cmd_design(const RunConfig& config);

// Full argv entry point (subcommand dispatch + config/flag handling).
int run_cli(int argc, const char* const* argv);

}  // namespace softjig

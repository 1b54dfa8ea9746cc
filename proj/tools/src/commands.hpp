#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace plaquette::cli {

// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int cmd_orbit(const RunConfig& cfg, std::ostream& log);
int cmd_ratio_map(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_critical(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

// Dispatch on cfg.command; maps library errors to the exit-code contract.
int run_command(const RunConfig& cfg, std::ostream& log);

}  // namespace plaquette::cli

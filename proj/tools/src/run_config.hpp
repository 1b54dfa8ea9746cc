#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "plaquette/integrator.hpp"
#include "plaquette/model.hpp"
#include "plaquette/sweep.hpp"

namespace plaquette::cli {

// A configuration problem: bad flag value, malformed config file, unknown
// key, invalid grid. Mapped to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved settings for one subcommand run. J is fixed to 1
// internally; all physical inputs are the ratios K/J and U/J.
struct RunConfig {
    std::string command;

    double phi = 0.0;
    double k = 1.0;
    double u = 0.0;

    IntegratorConfig sim;

    double threshold = kSelfTrapThreshold;
    double t_start = 0.0;

    std::optional<GridSpec> grid_x;
    std::optional<GridSpec> grid_y;
    std::optional<GridSpec> grid_u;

    std::string mode = "ku";  // sweep: "ku" (K/J x U/J) or "phiu" (phi x U/J)
    std::string out;
    std::string svg;
    std::string seedstate = "paper";
    int threads = 0;

    PlaquetteParams params() const;
    State seed_state() const;

    // Everything needed to reproduce the run, as one JSON object.
    nlohmann::json resolved() const;
};

// "min:max:count" -> GridSpec
GridSpec parse_grid(const std::string& text, const std::string& axis);

// "paper" or eight comma-separated reals re1,im1,...,re4,im4 (normalized).
State parse_seed_state(const std::string& text);

// Per-command defaults, overlaid with the config file (strict: unknown keys
// rejected) and then with explicitly set flags. Validates everything.
RunConfig make_run_config(const std::string& command, const nlohmann::json& file_values,
                          const nlohmann::json& flag_values);

// Load and strictly validate a JSON config file.
nlohmann::json load_config_file(const std::string& path);

}  // namespace plaquette::cli

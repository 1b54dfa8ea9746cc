#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

struct FlagValues {
    double phi = 0, k = 0, u = 0, dt = 0, tmax = 0, threshold = 0, tstart = 0;
    double norm_tol = 0, energy_tol = 0;
    int stride = 0, threads = 0;
    bool renormalize = false;
    std::string grid_x, grid_y, grid_u, out, svg, config, seedstate, mode;
};

void add_common_options(CLI::App* cmd, FlagValues& f) {
    cmd->add_option("--phi", f.phi, "synthetic gauge flux per plaquette (radians)");
    cmd->add_option("--k", f.k, "tunneling ratio K/J");
    cmd->add_option("--u", f.u, "interaction ratio U/J");
    cmd->add_option("--dt", f.dt, "integrator step size (units of 1/J)");
    cmd->add_option("--tmax", f.tmax, "integration horizon (units of 1/J)");
    cmd->add_option("--stride", f.stride, "record every k-th step");
    cmd->add_option("--threshold", f.threshold,
                    "self-trapping threshold on the time-averaged x_c");
    cmd->add_option("--tstart", f.tstart, "start of the averaging window");
    cmd->add_option("--grid-x", f.grid_x, "x-axis grid as min:max:count");
    cmd->add_option("--grid-y", f.grid_y, "y-axis grid as min:max:count");
    cmd->add_option("--grid-u", f.grid_u, "U/J scan grid as min:max:count");
    cmd->add_option("--out", f.out, "output CSV path");
    cmd->add_option("--svg", f.svg, "also write an SVG of the orbit to this path");
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--seedstate", f.seedstate,
                    "'paper' or eight reals re1,im1,...,re4,im4");
    cmd->add_option("--threads", f.threads,
                    "worker threads (0 = auto; PLAQUETTE_THREADS overrides)");
    cmd->add_option("--mode", f.mode, "sweep axes: 'ku' (K/J x U/J) or 'phiu' (phi x U/J)");
    cmd->add_option("--norm-tol", f.norm_tol, "abort when |norm - 1| exceeds this");
    cmd->add_option("--energy-tol", f.energy_tol,
                    "abort when the relative energy drift exceeds this");
    cmd->add_flag("--renormalize", f.renormalize, "project the norm back to 1 each step");
}

nlohmann::json flags_to_json(const CLI::App* cmd, const FlagValues& f) {
    nlohmann::json j = nlohmann::json::object();
    if (cmd->count("--phi")) j["phi"] = f.phi;
    if (cmd->count("--k")) j["k"] = f.k;
    if (cmd->count("--u")) j["u"] = f.u;
    if (cmd->count("--dt")) j["dt"] = f.dt;
    if (cmd->count("--tmax")) j["t_max"] = f.tmax;
    if (cmd->count("--stride")) j["sample_stride"] = f.stride;
    if (cmd->count("--threshold")) j["threshold"] = f.threshold;
    if (cmd->count("--tstart")) j["t_start"] = f.tstart;
    if (cmd->count("--grid-x")) j["grid_x"] = f.grid_x;
    if (cmd->count("--grid-y")) j["grid_y"] = f.grid_y;
    if (cmd->count("--grid-u")) j["grid_u"] = f.grid_u;
    if (cmd->count("--out")) j["out"] = f.out;
    if (cmd->count("--svg")) j["svg"] = f.svg;
    if (cmd->count("--seedstate")) j["seedstate"] = f.seedstate;
    if (cmd->count("--threads")) j["threads"] = f.threads;
    if (cmd->count("--mode")) j["mode"] = f.mode;
    if (cmd->count("--norm-tol")) j["norm_tolerance"] = f.norm_tol;
    if (cmd->count("--energy-tol")) j["energy_tolerance"] = f.energy_tol;
    if (cmd->count("--renormalize")) j["renormalize"] = true;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace plaquette;
    using namespace plaquette::cli;

    CLI::App app{
        "plaquette: mean-field dynamics of a Bose-Einstein condensate on a "
        "four-site plaquette with a synthetic gauge flux"};
    app.require_subcommand(1);

    FlagValues f;
    const std::pair<std::string, std::string> specs[] = {
        {"orbit", "integrate one trajectory; write t,n1..n4,xc,yc,norm,energy CSV"},
        {"ratio-map", "mode-frequency ratio alpha/beta over the (phi, K/J) plane"},
        {"sweep", "parallel self-trapping phase diagram over a 2-D parameter grid"},
        {"critical", "scan U/J at fixed (K, phi) for self-trapping transitions"},
        {"validate", "run the analytic-oracle, conservation, closure and symmetry suites"},
    };
    for (const auto& [name, desc] : specs) add_common_options(app.add_subcommand(name, desc), f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        nlohmann::json file_values = nlohmann::json::object();
        if (sub->count("--config")) file_values = load_config_file(f.config);
        const RunConfig cfg =
            make_run_config(sub->get_name(), file_values, flags_to_json(sub, f));
        return run_command(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

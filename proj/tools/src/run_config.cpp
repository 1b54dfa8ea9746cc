#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace plaquette::cli {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "phi",         "k",           "u",
        "dt",          "t_max",       "sample_stride",
        "renormalize", "record_states", "norm_tolerance",
        "energy_tolerance", "threshold", "t_start",
        "grid_x",      "grid_y",      "grid_u",
        "mode",        "out",         "svg",
        "seedstate",   "threads"};
    return keys;
}

double want_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

int want_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<int>();
}

bool want_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string want_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

GridSpec grid_from_json(const nlohmann::json& v, const std::string& axis) {
    if (v.is_string()) return parse_grid(v.get<std::string>(), axis);
    if (v.is_object()) {
        for (const auto& [key, value] : v.items()) {
            (void)value;
            if (key != "min" && key != "max" && key != "count")
                throw ConfigError("grid '" + axis + "': unknown key '" + key + "'");
        }
        if (!v.contains("min") || !v.contains("max") || !v.contains("count"))
            throw ConfigError("grid '" + axis + "': need min, max, count");
        GridSpec g;
        g.axis = axis;
        g.min = want_number(v.at("min"), axis + ".min");
        g.max = want_number(v.at("max"), axis + ".max");
        g.count = want_int(v.at("count"), axis + ".count");
        return g;
    }
    throw ConfigError("grid '" + axis + "' must be \"min:max:count\" or an object");
}

void apply_values(RunConfig& cfg, const nlohmann::json& values) {
    for (const auto& [key, v] : values.items()) {
        if (!known_keys().contains(key))
            throw ConfigError("unknown config key '" + key + "'");
        if (key == "phi") cfg.phi = want_number(v, key);
        else if (key == "k") cfg.k = want_number(v, key);
        else if (key == "u") cfg.u = want_number(v, key);
        else if (key == "dt") cfg.sim.dt = want_number(v, key);
        else if (key == "t_max") cfg.sim.t_max = want_number(v, key);
        else if (key == "sample_stride") cfg.sim.sample_stride = want_int(v, key);
        else if (key == "renormalize") cfg.sim.renormalize = want_bool(v, key);
        else if (key == "record_states") cfg.sim.record_states = want_bool(v, key);
        else if (key == "norm_tolerance") cfg.sim.norm_tolerance = want_number(v, key);
        else if (key == "energy_tolerance") cfg.sim.energy_tolerance = want_number(v, key);
        else if (key == "threshold") cfg.threshold = want_number(v, key);
        else if (key == "t_start") cfg.t_start = want_number(v, key);
        else if (key == "grid_x") cfg.grid_x = grid_from_json(v, "x");
        else if (key == "grid_y") cfg.grid_y = grid_from_json(v, "y");
        else if (key == "grid_u") cfg.grid_u = grid_from_json(v, "u");
        else if (key == "mode") cfg.mode = want_string(v, key);
        else if (key == "out") cfg.out = want_string(v, key);
        else if (key == "svg") cfg.svg = want_string(v, key);
        else if (key == "seedstate") cfg.seedstate = want_string(v, key);
        else if (key == "threads") cfg.threads = want_int(v, key);
    }
}

nlohmann::json grid_to_json(const GridSpec& g) {
    return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

}  // namespace

GridSpec parse_grid(const std::string& text, const std::string& axis) {
    GridSpec g;
    g.axis = axis;
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3)
        throw ConfigError("grid '" + axis + "': expected min:max:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        g.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
        g.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        g.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("grid '" + axis + "': cannot parse '" + text + "'");
    }
    try {
        g.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
    return g;
}

State parse_seed_state(const std::string& text) {
    if (text == "paper") return initial_state_paper();
    std::istringstream in(text);
    std::string part;
    std::vector<double> vals;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("seedstate: cannot parse '" + part + "'");
        }
    }
    if (vals.size() != 8)
        throw ConfigError(
            "seedstate: expected 'paper' or eight comma-separated reals "
            "re1,im1,re2,im2,re3,im3,re4,im4");
    State s;
    for (int j = 0; j < 4; ++j)
        s.psi[j] = Complex{vals[static_cast<std::size_t>(2 * j)],
                           vals[static_cast<std::size_t>(2 * j + 1)]};
    if (std::abs(s.norm_squared() - 1.0) > 1e-6)
        throw ConfigError("seedstate: state must be normalized to 1e-6 (got norm " +
                          std::to_string(s.norm_squared()) + ")");
    return s;
}

PlaquetteParams RunConfig::params() const {
    PlaquetteParams p;
    p.J = 1.0;
    p.K = k;
    p.phi = phi;
    p.U = u;
    return p;
}

State RunConfig::seed_state() const { return parse_seed_state(seedstate); }

nlohmann::json RunConfig::resolved() const {
    nlohmann::json j{
        {"command", command},
        {"phi", phi},
        {"k_over_j", k},
        {"u_over_j", u},
        {"integrator",
         {{"dt", sim.dt},
          {"t_max", sim.t_max},
          {"sample_stride", sim.sample_stride},
          {"renormalize", sim.renormalize},
          {"record_states", sim.record_states},
          {"norm_tolerance", sim.norm_tolerance},
          {"energy_tolerance", sim.energy_tolerance}}},
        {"threshold", threshold},
        {"t_start", t_start},
        {"mode", mode},
        {"seedstate", seedstate},
    };
    if (grid_x) j["grid_x"] = grid_to_json(*grid_x);
    if (grid_y) j["grid_y"] = grid_to_json(*grid_y);
    if (grid_u) j["grid_u"] = grid_to_json(*grid_u);
    return j;
}

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known_keys().contains(key))
            throw ConfigError("config file: unknown key '" + key + "'");
    }
    return j;
}

RunConfig make_run_config(const std::string& command, const nlohmann::json& file_values,
                          const nlohmann::json& flag_values) {
    RunConfig cfg;
    cfg.command = command;

    // per-command defaults
    cfg.sim.dt = 1e-3;
    cfg.sim.sample_stride = 10;
    if (command == "orbit") {
        cfg.phi = 0.5 * kPi;
        cfg.k = 1.0;
        cfg.u = 0.0;
        cfg.sim.t_max = 200.0;
    } else if (command == "ratio-map") {
        cfg.grid_x = GridSpec{"phi", 0.0, 4.0 * kPi, 401};
        cfg.grid_y = GridSpec{"k_over_j", 0.01, 4.0, 400};
    } else if (command == "sweep") {
        cfg.phi = 0.5 * kPi;  // fixed phi of the K/J x U/J diagram
        cfg.k = 0.5;          // fixed K/J of the phi x U/J diagram
        cfg.sim.t_max = 200.0;
    } else if (command == "critical") {
        cfg.phi = 0.5 * kPi;
        cfg.k = 1.0;
        cfg.sim.t_max = 200.0;
        cfg.grid_u = GridSpec{"u_over_j", 0.0, 30.0, 61};
    } else if (command == "validate") {
        cfg.sim.dt = 2.5e-4;  // meets the conservation tolerances (see README)
        cfg.sim.t_max = 100.0;
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }

    apply_values(cfg, file_values);
    apply_values(cfg, flag_values);

    if (command == "sweep") {
        if (cfg.mode != "ku" && cfg.mode != "phiu")
            throw ConfigError("sweep mode must be 'ku' or 'phiu'");
        if (!cfg.grid_x) {
            if (cfg.mode == "ku") cfg.grid_x = GridSpec{"k_over_j", 0.1, 2.0, 96};
            else cfg.grid_x = GridSpec{"phi", 0.0, 4.0 * kPi, 128};
        }
        if (!cfg.grid_y) cfg.grid_y = GridSpec{"u_over_j", 0.0, 40.0, 200};
    }

    try {
        cfg.params().validate();
        cfg.sim.validate();
        if (cfg.grid_x) cfg.grid_x->validate();
        if (cfg.grid_y) cfg.grid_y->validate();
        if (cfg.grid_u) cfg.grid_u->validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.t_start >= 0.0) || !(cfg.t_start < cfg.sim.t_max))
        throw ConfigError("t_start must lie in [0, t_max)");
    if (!std::isfinite(cfg.threshold))
        throw ConfigError("threshold must be finite");
    parse_seed_state(cfg.seedstate);  // validate early
    if ((command == "orbit" || command == "ratio-map" || command == "sweep") &&
        cfg.out.empty())
        throw ConfigError("'" + command + "' requires --out <path>");
    return cfg;
}

}  // namespace plaquette::cli

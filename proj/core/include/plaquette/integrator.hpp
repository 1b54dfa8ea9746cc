#pragma once

#include <vector>

#include "plaquette/model.hpp"

namespace plaquette {

// Fixed-step classical RK4 over gpe_rhs. The paper never states its
// integration scheme; dt = 1e-3 (units of 1/J) meets every validation
// tolerance used here while keeping sweeps deterministic.
struct IntegratorConfig {
    double dt = 1e-3;
    double t_max = 200.0;
    int sample_stride = 10;        // record every k-th step
    bool renormalize = false;      // project the norm back to 1 each step
    bool record_states = false;    // keep full complex amplitudes per sample
    double norm_tolerance = 1e-6;  // max |sum|psi|^2 - 1| before aborting
    double energy_tolerance = 1e-6;  // max relative energy drift before aborting

    void validate() const;
};

// Sampled time series of an integration. All per-sample vectors share one
// length; times are strictly increasing and always include t = 0 and t_max.
// "norm" throughout means sum_j |psi_j|^2.
struct Trajectory {
    std::vector<double> times;
    std::vector<SiteOccupations> occupations;
    std::vector<OrbitCenter> centers;
    std::vector<double> norms;
    std::vector<double> energies;
    std::vector<State> states;  // filled only when record_states

    double max_norm_drift = 0.0;    // max |norm - 1| over samples
    double max_energy_drift = 0.0;  // max |E - E0| / max(|E0|, 1)

    std::size_t size() const { return times.size(); }
};

// One RK4 step of length dt. Throws NonFinite if an amplitude leaves the
// finite range.
State step_rk4(const State& state, const PlaquetteParams& params, double dt);

// Evolve state0 to t_max, sampling every sample_stride steps plus the final
// point. state0 must be normalized to 1e-6. With renormalize = false the
// conservation diagnostics are enforced against the config tolerances
// (ToleranceExceeded signals that dt is too large for the parameter set).
Trajectory integrate(const State& state0, const PlaquetteParams& params,
                     const IntegratorConfig& config);

}  // namespace plaquette

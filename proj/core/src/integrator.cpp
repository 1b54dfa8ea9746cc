#include "plaquette/integrator.hpp"

#include <cmath>
#include <string>

#include "plaquette/analysis.hpp"

namespace plaquette {

namespace {

bool all_finite(const Amplitudes& psi) {
    for (const auto& a : psi)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

void rk4_advance(Amplitudes& psi, const Couplings& c, double dt) {
    Amplitudes k1, k2, k3, k4, tmp;
    detail::gpe_rhs_into(psi, c, k1);
    for (int j = 0; j < 4; ++j) tmp[j] = psi[j] + 0.5 * dt * k1[j];
    detail::gpe_rhs_into(tmp, c, k2);
    for (int j = 0; j < 4; ++j) tmp[j] = psi[j] + 0.5 * dt * k2[j];
    detail::gpe_rhs_into(tmp, c, k3);
    for (int j = 0; j < 4; ++j) tmp[j] = psi[j] + dt * k3[j];
    detail::gpe_rhs_into(tmp, c, k4);
    const double w = dt / 6.0;
    for (int j = 0; j < 4; ++j)
        psi[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

double norm_squared(const Amplitudes& psi) {
    return std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]) +
           std::norm(psi[3]);
}

}  // namespace

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParams("IntegratorConfig: dt must be a positive finite real");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw InvalidParams("IntegratorConfig: t_max must be a positive finite real");
    if (dt > t_max) throw InvalidParams("IntegratorConfig: dt must not exceed t_max");
    if (sample_stride < 1)
        throw InvalidParams("IntegratorConfig: sample_stride must be >= 1");
    if (!(norm_tolerance > 0.0) || !(energy_tolerance > 0.0))
        throw InvalidParams("IntegratorConfig: tolerances must be > 0");
}

State step_rk4(const State& state, const PlaquetteParams& params, double dt) {
    if (!(dt > 0.0)) throw InvalidParams("step_rk4: dt must be > 0");
    params.validate();
    State out = state;
    const Couplings c(params);
    rk4_advance(out.psi, c, dt);
    out.t = state.t + dt;
    if (!all_finite(out.psi))
        throw NonFinite("step_rk4: amplitudes became non-finite");
    return out;
}

Trajectory integrate(const State& state0, const PlaquetteParams& params,
                     const IntegratorConfig& config) {
    params.validate();
    config.validate();
    if (std::abs(state0.norm_squared() - 1.0) > 1e-6)
        throw InvalidParams("integrate: initial state is not normalized (1e-6)");

    // Full steps of dt, plus one shorter final step when t_max is not an
    // exact multiple, so that the last sample lands on t_max itself.
    const long n_full = static_cast<long>(std::floor(config.t_max / config.dt + 1e-9));
    double remainder = config.t_max - static_cast<double>(n_full) * config.dt;
    if (remainder < config.dt * 1e-9) remainder = 0.0;
    const long n_steps = n_full + (remainder > 0.0 ? 1 : 0);

    Trajectory traj;
    const std::size_t n_samples =
        static_cast<std::size_t>(n_steps / config.sample_stride) + 2;
    traj.times.reserve(n_samples);
    traj.occupations.reserve(n_samples);
    traj.centers.reserve(n_samples);
    traj.norms.reserve(n_samples);
    traj.energies.reserve(n_samples);
    if (config.record_states) traj.states.reserve(n_samples);

    const Couplings c(params);
    Amplitudes psi = state0.psi;
    const double e0 = energy(state0, params);
    const double e_scale = std::max(std::abs(e0), 1.0);

    auto record = [&](long step, double t) {
        const double n2 = norm_squared(psi);
        if (!std::isfinite(n2) || !all_finite(psi))
            throw NonFinite("integrate: amplitudes became non-finite at t = " +
                            std::to_string(t));
        State s{psi, t};
        const double e = energy(s, params);
        const double norm_drift = std::abs(n2 - 1.0);
        const double energy_drift = std::abs(e - e0) / e_scale;
        traj.max_norm_drift = std::max(traj.max_norm_drift, norm_drift);
        traj.max_energy_drift = std::max(traj.max_energy_drift, energy_drift);
        if (!config.renormalize) {
            if (traj.max_norm_drift > config.norm_tolerance)
                throw ToleranceExceeded(
                    "integrate: norm drift " + std::to_string(norm_drift) +
                    " exceeds tolerance at t = " + std::to_string(t) +
                    " (reduce dt)");
            if (traj.max_energy_drift > config.energy_tolerance)
                throw ToleranceExceeded(
                    "integrate: relative energy drift " + std::to_string(energy_drift) +
                    " exceeds tolerance at t = " + std::to_string(t) +
                    " (reduce dt)");
        }
        traj.times.push_back(t);
        traj.occupations.push_back(occupations(s));
        traj.centers.push_back(orbit_center(s));
        traj.norms.push_back(n2);
        traj.energies.push_back(e);
        if (config.record_states) traj.states.push_back(s);
        (void)step;
    };

    record(0, state0.t);
    for (long k = 1; k <= n_full; ++k) {
        rk4_advance(psi, c, config.dt);
        if (config.renormalize) {
            const double n2 = norm_squared(psi);
            if (n2 > 0.0 && std::isfinite(n2)) {
                const double inv = 1.0 / std::sqrt(n2);
                for (auto& a : psi) a *= inv;
            }
        }
        const bool is_last = (k == n_steps);
        if (k % config.sample_stride == 0 && !is_last)
            record(k, state0.t + static_cast<double>(k) * config.dt);
        else if (is_last)
            record(k, state0.t + config.t_max);
    }
    if (remainder > 0.0) {
        rk4_advance(psi, c, remainder);
        record(n_steps, state0.t + config.t_max);
    }
    return traj;
}

}  // namespace plaquette

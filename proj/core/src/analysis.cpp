#include "plaquette/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plaquette {

namespace {

constexpr double kPi = std::numbers::pi;

// wrap to (-pi, pi]
double wrap_phase(double x) {
    double w = std::remainder(x, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

double site_phase(const Complex& z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    return std::arg(z);
}

}  // namespace

OrbitCenter orbit_center(const State& state) {
    const auto occ = occupations(state);
    return {-occ.n[0] + occ.n[1] + occ.n[2] - occ.n[3],
            occ.n[0] + occ.n[1] - occ.n[2] - occ.n[3]};
}

double time_average_xc(const Trajectory& traj, double t_start) {
    if (traj.times.size() < 2) throw EmptyWindow("time_average_xc: trajectory too short");
    if (!(t_start < traj.times.back()))
        throw EmptyWindow("time_average_xc: window starts at or after the final sample");

    std::size_t i0 = 0;
    while (i0 < traj.times.size() && traj.times[i0] < t_start) ++i0;
    if (i0 + 1 >= traj.times.size())
        throw EmptyWindow("time_average_xc: fewer than two samples in the window");

    double integral = 0.0;
    for (std::size_t i = i0 + 1; i < traj.times.size(); ++i) {
        const double dt = traj.times[i] - traj.times[i - 1];
        integral += 0.5 * dt * (traj.centers[i].x + traj.centers[i - 1].x);
    }
    const double span = traj.times.back() - traj.times[i0];
    if (!(span > 0.0)) throw EmptyWindow("time_average_xc: zero-length window");
    return integral / span;
}

SelfTrapVerdict classify_selftrapping(const Trajectory& traj, double t_start,
                                      double threshold) {
    SelfTrapVerdict v;
    v.average_xc = time_average_xc(traj, t_start);
    v.trapped = v.average_xc < threshold;
    v.window_start = std::max(t_start, traj.times.front());
    v.window_end = traj.times.back();
    return v;
}

ReducedState reduce(const State& state) {
    const auto occ = occupations(state);
    const double upper = occ.n[0] + occ.n[1];
    const double lower = occ.n[2] + occ.n[3];
    if (!(upper > 0.0)) throw EmptyPair("reduce: upper pair (sites 1,2) is unoccupied");
    if (!(lower > 0.0)) throw EmptyPair("reduce: lower pair (sites 3,4) is unoccupied");

    ReducedState r;
    r.s_u = (occ.n[1] - occ.n[0]) / upper;
    r.s_d = (occ.n[2] - occ.n[3]) / lower;
    r.theta_u = wrap_phase(site_phase(state.psi[1]) - site_phase(state.psi[0]));
    r.theta_d = wrap_phase(site_phase(state.psi[2]) - site_phase(state.psi[3]));
    return r;
}

double reduced_hamiltonian(const ReducedState& r, double K, double U, double phi) {
    if (std::abs(r.s_u) > 1.0 || std::abs(r.s_d) > 1.0)
        throw InvalidParams("reduced_hamiltonian: imbalances must lie in [-1, 1]");
    const double ju = std::sqrt(std::max(1.0 - r.s_u * r.s_u, 0.0));
    const double jd = std::sqrt(std::max(1.0 - r.s_d * r.s_d, 0.0));
    return -0.5 * K * ju * std::cos(r.theta_u + phi / 2) + U / 16.0 * r.s_u * r.s_u +
           -0.5 * K * jd * std::cos(r.theta_d + phi / 2) + U / 16.0 * r.s_d * r.s_d;
}

double critical_interaction(double s_ui, double theta_ui, double phi) {
    if (!(std::abs(s_ui) <= 1.0))
        throw InvalidParams("critical_interaction: |s_ui| must be <= 1");
    if (s_ui == 0.0)
        throw ZeroImbalance(
            "critical_interaction: diverges at zero initial imbalance");
    const double s2 = s_ui * s_ui;
    return 8.0 * (1.0 + std::sqrt(1.0 - s2) * std::cos(theta_ui + phi / 2)) / s2;
}

}  // namespace plaquette

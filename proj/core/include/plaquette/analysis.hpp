#pragma once

#include "plaquette/integrator.hpp"
#include "plaquette/model.hpp"

namespace plaquette {

// Mean atom position from the site occupations (site geometry in model.hpp):
//   x_c = -n1 + n2 + n3 - n4,   y_c = n1 + n2 - n3 - n4.
OrbitCenter orbit_center(const State& state);

// Trapezoidal time average of x_c over [t_start, end of trajectory].
// Throws EmptyWindow when fewer than two samples fall inside the window.
double time_average_xc(const Trajectory& traj, double t_start = 0.0);

// Expanded orbits average near 0, self-trapped ones near -1; -0.5 is the
// maximal-margin separator between the two classes.
inline constexpr double kSelfTrapThreshold = -0.5;

struct SelfTrapVerdict {
    double average_xc = 0.0;
    bool trapped = false;
    double window_start = 0.0;
    double window_end = 0.0;
};

SelfTrapVerdict classify_selftrapping(const Trajectory& traj, double t_start = 0.0,
                                      double threshold = kSelfTrapThreshold);

// Double-well reduction psi_j = sqrt(n_j) e^{i theta_j}: population
// imbalances of the upper pair (sites 1,2) and lower pair (sites 3,4) and
// their relative phases, reduced to (-pi, pi]. The phase of an unoccupied
// site is taken as 0 (the reduced Hamiltonian is insensitive there).
struct ReducedState {
    double s_u = 0.0;      // (n2 - n1)/(n2 + n1)
    double s_d = 0.0;      // (n3 - n4)/(n3 + n4)
    double theta_u = 0.0;  // theta_2 - theta_1
    double theta_d = 0.0;  // theta_3 - theta_4
};

ReducedState reduce(const State& state);

// Classical two-double-well Hamiltonian of the reduction:
//   H = -K/2 sqrt(1-s_u^2) cos(theta_u + phi/2) + U/16 s_u^2
//       -K/2 sqrt(1-s_d^2) cos(theta_d + phi/2) + U/16 s_d^2.
double reduced_hamiltonian(const ReducedState& r, double K, double U, double phi);

// Critical interaction of the double-well approximation for an initial
// imbalance s_ui and relative phase theta_ui:
//   (U/K)_cr = 8 (1 + sqrt(1 - s_ui^2) cos(theta_ui + phi/2)) / s_ui^2.
// Exactly 8 at s_ui = +-1; diverges as s_ui -> 0 (ZeroImbalance).
double critical_interaction(double s_ui, double theta_ui, double phi);

}  // namespace plaquette

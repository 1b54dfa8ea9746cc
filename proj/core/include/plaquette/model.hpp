#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "plaquette/errors.hpp"

namespace plaquette {

using Complex = std::complex<double>;
using Amplitudes = std::array<Complex, 4>;

// Four-site plaquette with a synthetic gauge flux phi. Site geometry
// (fixed project-wide, units of the trap half-separations):
//
//     1 (-x,+y) --- K e^{i phi/2} --- 2 (+x,+y)
//         |                               |
//         J                               J
//         |                               |
//     4 (-x,-y) --- K e^{i phi/2} --- 3 (+x,-y)
//
// J > 0 is the bare tunneling along y and fixes the unit of energy
// (hbar = 1, times in 1/J); K >= 0 is the laser-assisted tunneling along x
// carrying the Peierls phase; U is the on-site interaction, positive
// meaning repulsive. All rates are quoted as the ratios K/J, U/J.
struct PlaquetteParams {
    double J = 1.0;
    double K = 1.0;
    double phi = 0.0;
    double U = 0.0;

    void validate() const;  // throws InvalidParams
};

// Mean-field state: four complex site amplitudes, normalized to
// sum |psi_j|^2 = 1, plus the time stamp.
struct State {
    Amplitudes psi{};
    double t = 0.0;

    double norm_squared() const {
        return std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]) +
               std::norm(psi[3]);
    }
};

// Site populations n_j = |psi_j|^2.
struct SiteOccupations {
    std::array<double, 4> n{};

    double sum() const { return n[0] + n[1] + n[2] + n[3]; }
};

// Mean atom position (x_c, y_c) in units of the trap half-separations.
struct OrbitCenter {
    double x = 0.0;
    double y = 0.0;
};

// The initial condition used throughout the paper's dynamics,
// (psi_1, psi_2, psi_3, psi_4)(0) = (sqrt(0.5), 0, 0, sqrt(0.5)):
// everything on the left pair of wells, symmetrically split in y.
// Note on the sign of psi_4: the published text writes -sqrt(0.5), but that
// sign is inconsistent with the paper's own closed-form solution, center
// trajectory and self-trapping results, all of which follow from +sqrt(0.5)
// under the stated equations of motion. See README ("Conventions").
State initial_state_paper();

// Hot-path form of the couplings: the Peierls factors are precomputed once
// per integration instead of per right-hand-side evaluation.
struct Couplings {
    Complex k_fwd;  // K e^{+i phi/2}
    Complex k_bwd;  // K e^{-i phi/2}
    double j;
    double u;

    explicit Couplings(const PlaquetteParams& p)
        : k_fwd(p.K * std::cos(p.phi / 2), p.K * std::sin(p.phi / 2)),
          k_bwd(std::conj(k_fwd)),
          j(p.J),
          u(p.U) {}
};

namespace detail {

// d psi / dt for the coupled Gross-Pitaevskii equations
//   i d psi_1/dt = -K e^{+i phi/2} psi_2 - J psi_4 + U |psi_1|^2 psi_1
//   i d psi_2/dt = -K e^{-i phi/2} psi_1 - J psi_3 + U |psi_2|^2 psi_2
//   i d psi_3/dt = -K e^{+i phi/2} psi_4 - J psi_2 + U |psi_3|^2 psi_3
//   i d psi_4/dt = -K e^{-i phi/2} psi_3 - J psi_1 + U |psi_4|^2 psi_4
// The mirrored operand order keeps the (1<->4, 2<->3) reflection exact in
// floating point at phi = 0, so y_c stays at rounding level there.
inline void gpe_rhs_into(const Amplitudes& psi, const Couplings& c,
                         Amplitudes& out) {
    const Complex i{0.0, 1.0};
    out[0] = i * (c.k_fwd * psi[1] + c.j * psi[3] - c.u * std::norm(psi[0]) * psi[0]);
    out[1] = i * (c.k_bwd * psi[0] + c.j * psi[2] - c.u * std::norm(psi[1]) * psi[1]);
    out[2] = i * (c.k_fwd * psi[3] + c.j * psi[1] - c.u * std::norm(psi[2]) * psi[2]);
    out[3] = i * (c.k_bwd * psi[2] + c.j * psi[0] - c.u * std::norm(psi[3]) * psi[3]);
}

}  // namespace detail

// Time derivative of the state under the coupled GPEs. Pure function; the
// identity Re sum psi_j^* (d psi_j/dt) = 0 holds exactly, so the flow
// preserves the norm.
Amplitudes gpe_rhs(const State& state, const PlaquetteParams& params);

// Mean-field energy functional
//   E = -K (e^{i phi/2} psi_1^* psi_2 + e^{i phi/2} psi_3^* psi_4 + c.c.)
//       -J (psi_2^* psi_3 + psi_4^* psi_1 + c.c.) + U/2 sum |psi_j|^4.
// Real by construction; a constant of motion of gpe_rhs.
double energy(const State& state, const PlaquetteParams& params);

SiteOccupations occupations(const State& state);

}  // namespace plaquette

#include "plaquette/model.hpp"

#include <cmath>

namespace plaquette {

void PlaquetteParams::validate() const {
    if (!(J > 0.0) || !std::isfinite(J))
        throw InvalidParams("PlaquetteParams: J must be a positive finite real");
    if (!(K >= 0.0) || !std::isfinite(K))
        throw InvalidParams("PlaquetteParams: K must be a non-negative finite real");
    if (!std::isfinite(phi))
        throw InvalidParams("PlaquetteParams: phi must be finite");
    if (!std::isfinite(U))
        throw InvalidParams("PlaquetteParams: U must be finite");
}

State initial_state_paper() {
    const double r = std::sqrt(0.5);
    State s;
    s.psi = {Complex{r, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{r, 0.0}};
    s.t = 0.0;
    return s;
}

Amplitudes gpe_rhs(const State& state, const PlaquetteParams& params) {
    params.validate();
    const Couplings c(params);
    Amplitudes out;
    detail::gpe_rhs_into(state.psi, c, out);
    return out;
}

double energy(const State& state, const PlaquetteParams& params) {
    params.validate();
    const auto& p = state.psi;
    const Complex eiphi{std::cos(params.phi / 2), std::sin(params.phi / 2)};
    const double hop_x =
        -2.0 * params.K *
        std::real(eiphi * (std::conj(p[0]) * p[1] + std::conj(p[2]) * p[3]));
    const double hop_y =
        -2.0 * params.J * std::real(std::conj(p[1]) * p[2] + std::conj(p[3]) * p[0]);
    const double quartic = std::norm(p[0]) * std::norm(p[0]) +
                           std::norm(p[1]) * std::norm(p[1]) +
                           std::norm(p[2]) * std::norm(p[2]) +
                           std::norm(p[3]) * std::norm(p[3]);
    return hop_x + hop_y + 0.5 * params.U * quartic;
}

SiteOccupations occupations(const State& state) {
    SiteOccupations occ;
    for (int j = 0; j < 4; ++j) occ.n[j] = std::norm(state.psi[j]);
    return occ;
}

}  // namespace plaquette

#pragma once

#include <vector>

#include "plaquette/model.hpp"

namespace plaquette {

// The two eigenfrequencies of the linear (U = 0) plaquette,
//   alpha = sqrt(K^2 + J^2 + 2 K J cos(phi/2)),
//   beta  = sqrt(K^2 + J^2 - 2 K J cos(phi/2)).
// Their ratio decides periodic vs quasi-periodic cyclotron orbits;
// alpha^2 + beta^2 = 2 (K^2 + J^2) identically.
struct ModeFrequencies {
    double alpha = 0.0;
    double beta = 0.0;

    // alpha/beta; +inf at the degenerate beta = 0 point.
    double ratio() const;
};

ModeFrequencies mode_frequencies(const PlaquetteParams& params);

// Electron-on-a-plaquette comparison: the Harper-model frequencies
// (Jt sqrt(2 + 2 cos(phi/2)), Jt sqrt(2 - 2 cos(phi/2))). Coincides with
// mode_frequencies at K = J = Jt.
ModeFrequencies harper_frequencies(double j_tilde, double phi);

// Closed-form linear evolution of initial_state_paper(). Requires U = 0
// (NonlinearUnsupported otherwise). The degenerate limits alpha -> 0 or
// beta -> 0 are evaluated through sin(w t)/w -> t, so the result is finite
// everywhere; the norm is 1 to machine precision for all t.
State analytic_state(double t, const PlaquetteParams& params);

// Closed-form orbit center of the same trajectory:
//   x_c = (K^2 - J^2)/(alpha beta) sin(alpha t) sin(beta t)
//         - cos(alpha t) cos(beta t)
//   y_c = K sin(phi/2) [ cos(alpha t) sin(beta t)/beta
//                        - cos(beta t) sin(alpha t)/alpha ]
// Same degenerate-limit handling as analytic_state; |x_c|, |y_c| <= 1.
OrbitCenter analytic_center(double t, const PlaquetteParams& params);

// The same closed form with the two frequencies supplied by the caller
// instead of recomputed from params. Exchanging the frequency arguments
// while keeping params fixed leaves x_c unchanged and negates y_c.
OrbitCenter closed_form_center(double t, double alpha, double beta,
                               const PlaquetteParams& params);

// Rational or irrational frequency ratio, decided by continued-fraction
// best approximation against a tolerance.
struct Commensurability {
    enum class Kind { periodic, quasi_periodic };

    Kind kind = Kind::quasi_periodic;
    long long p = 0;     // alpha/beta ~ p/q, coprime; set when periodic
    long long q = 0;
    double error = 0.0;  // |alpha/beta - p/q| of the best candidate

    bool is_periodic() const { return kind == Kind::periodic; }
};

// Defaults chosen for the ratio-map scale of the problem; the paper never
// states how commensurability is decided numerically.
inline constexpr double kCommensurabilityTolerance = 1e-6;
inline constexpr long long kMaxDenominator = 64;

// Best rational approximation p/q of alpha/beta with q <= max_denominator
// (continued-fraction convergents and final semiconvergent). Periodic when
// the approximation error is within tolerance. Throws DegenerateFrequency
// when beta = 0. The frozen-mode corner alpha = 0 classifies as
// Periodic{0, 1}.
Commensurability classify_commensurability(
    const ModeFrequencies& freqs,
    double tolerance = kCommensurabilityTolerance,
    long long max_denominator = kMaxDenominator);

// Closure time of a periodic orbit: T = 2 pi p / alpha = 2 pi q / beta.
// Throws NotPeriodic for quasi-periodic classifications.
double orbit_period(const ModeFrequencies& freqs, const Commensurability& comm);

// Solutions K > 0 of alpha/beta = r at fixed phi and J, i.e. of
//   (1 - r^2)(K^2 + J^2) + 2 (1 + r^2) K J cos(phi/2) = 0.
// Two, one or zero roots; when two, their product is J^2 (Vieta).
struct KRootResult {
    enum class Kind {
        roots,             // 0, 1 or 2 positive roots below
        all_k,             // r = 1 with cos(phi/2) = 0: every K works
        degenerate_ratio,  // r = 1 with cos(phi/2) != 0: only K = 0, excluded
    };

    Kind kind = Kind::roots;
    std::vector<double> roots;  // ascending

    bool admits_all_k() const { return kind == Kind::all_k; }
};

KRootResult find_k_for_ratio(double r, double phi, double j);

// alpha/beta over a (phi, K/J) grid at J = 1, the Fig.-2-style map.
// Degenerate beta = 0 cells carry ratio = +inf.
struct RatioMap {
    std::vector<double> phi;
    std::vector<double> k_over_j;
    std::vector<double> alpha;  // row-major [phi][k]
    std::vector<double> beta;
    std::vector<double> ratio;

    std::size_t index(std::size_t ip, std::size_t ik) const {
        return ip * k_over_j.size() + ik;
    }
};

RatioMap ratio_map(std::vector<double> phi_grid, std::vector<double> k_grid);

}  // namespace plaquette

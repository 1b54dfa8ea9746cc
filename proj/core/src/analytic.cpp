#include "plaquette/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace plaquette {

namespace {

constexpr double kPi = std::numbers::pi;

double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }

// sin(omega t) / omega, continued through omega -> 0 (value t).
double sin_over_omega(double omega, double t) {
    const double x = omega * t;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
    }
    return std::sin(x) / omega;
}

// Best rational approximation of x > 0 with denominator <= maxq:
// continued-fraction convergents, then the best final semiconvergent.
struct Rational {
    long long p = 0, q = 1;
};

Rational best_rational(double x, long long maxq) {
    Rational best{static_cast<long long>(std::llround(x)), 1};
    long long h_prev = 1, k_prev = 0;  // h_{-1}/k_{-1}
    long long h = static_cast<long long>(std::floor(x)), k = 1;
    double frac = x - std::floor(x);
    double best_err = std::abs(x - static_cast<double>(best.p));
    auto consider = [&](long long p, long long q) {
        const double err = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
        if (err < best_err) {
            best = {p, q};
            best_err = err;
        }
    };
    consider(h, k);
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        const double xi = 1.0 / frac;
        if (xi > 9.0e18) break;
        long long a = static_cast<long long>(std::floor(xi));
        frac = xi - std::floor(xi);
        // next convergent h_next/k_next = (a h + h_prev)/(a k + k_prev)
        if (static_cast<double>(a) >
            (9.0e18 - static_cast<double>(k_prev)) / static_cast<double>(k))
            break;
        if (h > 0 && static_cast<double>(a) >
                         (9.0e18 - static_cast<double>(h_prev)) / static_cast<double>(h))
            break;
        long long k_next = a * k + k_prev;
        if (k_next > maxq) {
            // best semiconvergent still under the denominator cap
            const long long a_cut = (maxq - k_prev) / k;
            if (a_cut >= 1) consider(a_cut * h + h_prev, a_cut * k + k_prev);
            break;
        }
        long long h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        consider(h, k);
    }
    return best;
}

}  // namespace

double ModeFrequencies::ratio() const {
    if (beta == 0.0) return std::numeric_limits<double>::infinity();
    return alpha / beta;
}

ModeFrequencies mode_frequencies(const PlaquetteParams& params) {
    params.validate();
    const double cross = 2.0 * params.K * params.J * std::cos(params.phi / 2);
    const double sum = params.K * params.K + params.J * params.J;
    return {sqrt_clamped(sum + cross), sqrt_clamped(sum - cross)};
}

ModeFrequencies harper_frequencies(double j_tilde, double phi) {
    if (!(j_tilde > 0.0) || !std::isfinite(j_tilde))
        throw InvalidParams("harper_frequencies: J~ must be positive");
    if (!std::isfinite(phi)) throw InvalidParams("harper_frequencies: phi must be finite");
    const double c = std::cos(phi / 2);
    return {j_tilde * sqrt_clamped(2.0 + 2.0 * c), j_tilde * sqrt_clamped(2.0 - 2.0 * c)};
}

State analytic_state(double t, const PlaquetteParams& params) {
    params.validate();
    if (params.U != 0.0)
        throw NonlinearUnsupported("analytic_state: closed form requires U = 0");

    const auto [alpha, beta] = mode_frequencies(params);
    const Complex i{0.0, 1.0};
    const Complex eiphi{std::cos(params.phi / 2), std::sin(params.phi / 2)};
    const Complex m_plus = params.J + params.K * eiphi;   // J + K e^{i phi/2}
    const Complex m_minus = params.J - params.K * eiphi;  // J - K e^{i phi/2}
    const double inv2r2 = 1.0 / (2.0 * std::sqrt(2.0));

    const double ca = std::cos(alpha * t);
    const double cb = std::cos(beta * t);
    // c1 sin(alpha t) and c2 sin(beta t), with the 1/alpha, 1/beta poles
    // cancelled against sin through sin(w t)/w (finite at w = 0, where the
    // matching numerator J -+ K e^{i phi/2} vanishes as well).
    const Complex a_term = i * m_plus * (inv2r2 * sin_over_omega(alpha, t));
    const Complex b_term = i * m_minus * (inv2r2 * sin_over_omega(beta, t));

    State s;
    s.t = t;
    s.psi[0] = inv2r2 * (ca + cb) + a_term + b_term;
    s.psi[1] = inv2r2 * (ca - cb) - std::conj(a_term) + std::conj(b_term);
    s.psi[2] = inv2r2 * (ca - cb) + a_term - b_term;
    s.psi[3] = inv2r2 * (ca + cb) - std::conj(a_term) - std::conj(b_term);
    return s;
}

OrbitCenter closed_form_center(double t, double alpha, double beta,
                               const PlaquetteParams& params) {
    const double sa = sin_over_omega(alpha, t);  // sin(alpha t)/alpha
    const double sb = sin_over_omega(beta, t);
    const double ca = std::cos(alpha * t);
    const double cb = std::cos(beta * t);
    const double ksin = params.K * std::sin(params.phi / 2);
    return {(params.K * params.K - params.J * params.J) * sa * sb - ca * cb,
            ksin * (ca * sb - cb * sa)};
}

OrbitCenter analytic_center(double t, const PlaquetteParams& params) {
    params.validate();
    if (params.U != 0.0)
        throw NonlinearUnsupported("analytic_center: closed form requires U = 0");
    const auto [alpha, beta] = mode_frequencies(params);
    return closed_form_center(t, alpha, beta, params);
}

Commensurability classify_commensurability(const ModeFrequencies& freqs,
                                           double tolerance,
                                           long long max_denominator) {
    if (!(tolerance > 0.0)) throw InvalidParams("classify_commensurability: tolerance must be > 0");
    if (max_denominator < 1)
        throw InvalidParams("classify_commensurability: max_denominator must be >= 1");
    if (!(freqs.beta > 0.0))
        throw DegenerateFrequency("classify_commensurability: beta = 0, ratio undefined");

    const double x = freqs.alpha / freqs.beta;
    if (!(x < 9.0e15))
        throw DegenerateFrequency("classify_commensurability: ratio numerically unbounded");
    const Rational r = best_rational(x, max_denominator);
    const double err = std::abs(x - static_cast<double>(r.p) / static_cast<double>(r.q));
    if (err <= tolerance)
        return {Commensurability::Kind::periodic, r.p, r.q, err};
    return {Commensurability::Kind::quasi_periodic, 0, 0, err};
}

double orbit_period(const ModeFrequencies& freqs, const Commensurability& comm) {
    if (!comm.is_periodic())
        throw NotPeriodic("orbit_period: quasi-periodic orbit never closes");
    if (comm.p > 0 && freqs.alpha > 0.0)
        return 2.0 * kPi * static_cast<double>(comm.p) / freqs.alpha;
    // frozen alpha mode (p = 0): closure is set by beta alone
    return 2.0 * kPi * static_cast<double>(comm.q) / freqs.beta;
}

KRootResult find_k_for_ratio(double r, double phi, double j) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidParams("find_k_for_ratio: r must be > 0");
    if (!(j > 0.0) || !std::isfinite(j)) throw InvalidParams("find_k_for_ratio: J must be > 0");
    if (!std::isfinite(phi)) throw InvalidParams("find_k_for_ratio: phi must be finite");

    const double c = std::cos(phi / 2);
    if (r == 1.0) {
        // (1 - r^2) = 0 reduces the equation to 4 K J cos(phi/2) = 0.
        if (std::abs(c) < 1e-12) return {KRootResult::Kind::all_k, {}};
        return {KRootResult::Kind::degenerate_ratio, {}};
    }

    // (1 - r^2) K^2 + 2 (1 + r^2) c J K + (1 - r^2) J^2 = 0
    const double A = 1.0 - r * r;
    const double B = 2.0 * (1.0 + r * r) * c * j;
    const double C = A * j * j;
    const double disc = B * B - 4.0 * A * C;
    KRootResult out;
    if (disc < 0.0) return out;

    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (B + std::copysign(sq, B));
    double k1, k2;
    if (qq != 0.0) {
        k1 = qq / A;
        k2 = C / qq;
    } else {
        k1 = k2 = 0.0;  // B = disc = 0: double root at the origin
    }
    if (k1 > k2) std::swap(k1, k2);
    if (std::isfinite(k1) && k1 > 0.0) out.roots.push_back(k1);
    if (std::isfinite(k2) && k2 > 0.0 && k2 != k1) out.roots.push_back(k2);
    return out;
}

RatioMap ratio_map(std::vector<double> phi_grid, std::vector<double> k_grid) {
    if (phi_grid.empty() || k_grid.empty())
        throw InvalidParams("ratio_map: grids must be non-empty");
    for (double k : k_grid)
        if (!(k > 0.0)) throw InvalidParams("ratio_map: K/J values must be > 0");

    RatioMap map;
    map.phi = std::move(phi_grid);
    map.k_over_j = std::move(k_grid);
    const std::size_t n = map.phi.size() * map.k_over_j.size();
    map.alpha.resize(n);
    map.beta.resize(n);
    map.ratio.resize(n);
    for (std::size_t ip = 0; ip < map.phi.size(); ++ip) {
        const double c = std::cos(map.phi[ip] / 2);
        for (std::size_t ik = 0; ik < map.k_over_j.size(); ++ik) {
            const double k = map.k_over_j[ik];
            const double sum = k * k + 1.0;
            const double cross = 2.0 * k * c;
            const double alpha = sqrt_clamped(sum + cross);
            const double beta = sqrt_clamped(sum - cross);
            const std::size_t idx = map.index(ip, ik);
            map.alpha[idx] = alpha;
            map.beta[idx] = beta;
            map.ratio[idx] =
                beta == 0.0 ? std::numeric_limits<double>::infinity() : alpha / beta;
        }
    }
    return map;
}

}  // namespace plaquette

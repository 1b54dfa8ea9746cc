#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plaquette/analytic.hpp"
#include "plaquette/integrator.hpp"

using namespace plaquette;

namespace {
constexpr double kPi = std::numbers::pi;

State conjugated(const State& s) {
    State out = s;
    for (auto& a : out.psi) a = std::conj(a);
    return out;
}
}  // namespace

TEST_CASE("config validation") {
    IntegratorConfig c;
    CHECK_NOTHROW(c.validate());
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
    c.dt = 1.0;
    c.t_max = 0.5;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
    c.t_max = 10.0;
    c.sample_stride = 0;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
    c.sample_stride = 1;
    c.norm_tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
}

TEST_CASE("step: zero Hamiltonian leaves the state, advances time") {
    PlaquetteParams p{1e-300, 0.0, 0.0, 0.0};
    // J must stay positive; use a vanishing J so the RHS is numerically zero
    State s = initial_state_paper();
    const State out = step_rk4(s, p, 0.25);
    CHECK(out.t == doctest::Approx(0.25));
    for (int j = 0; j < 4; ++j) CHECK(std::abs(out.psi[j] - s.psi[j]) < 1e-300);
}

TEST_CASE("step: decoupled phase rotation matches the exact solution") {
    // K = 0, J -> 0, U = 1, state (1,0,0,0): psi_1(t) = e^{-i U t}
    PlaquetteParams p{1e-300, 0.0, 0.0, 1.0};
    State s;
    s.psi = {Complex{1.0, 0.0}, {}, {}, {}};
    const double dt = 0.01;
    const State out = step_rk4(s, p, dt);
    const Complex exact = std::polar(1.0, -p.U * dt);
    // single RK4 step: local error O(dt^5)
    CHECK(std::abs(out.psi[0] - exact) < 1e-10 * dt);

    State walk = s;
    for (int i = 0; i < 100; ++i) walk = step_rk4(walk, p, dt);
    CHECK(std::abs(walk.psi[0] - std::polar(1.0, -p.U * 1.0)) < 1e-9);
}

TEST_CASE("step: per-step norm drift at the Fig.-6-scale parameters") {
    // U/J = 21, K/J = 1, dt = 1e-3: norm drift per step <= 1e-12
    PlaquetteParams p{1.0, 1.0, 0.5 * kPi, 21.0};
    State s = initial_state_paper();
    for (int i = 0; i < 2000; ++i) {
        const State next = step_rk4(s, p, 1e-3);
        CHECK(std::abs(next.norm_squared() - s.norm_squared()) <= 1e-12);
        s = next;
    }
}

TEST_CASE("step: rejects bad dt and detects non-finite amplitudes") {
    PlaquetteParams p{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(step_rk4(initial_state_paper(), p, 0.0), InvalidParams);

    State broken;
    broken.psi = {Complex{std::numeric_limits<double>::infinity(), 0.0}, {}, {}, {}};
    CHECK_THROWS_AS(step_rk4(broken, p, 1e-3), NonFinite);
}

TEST_CASE("integrate: matches the closed-form linear solution") {
    PlaquetteParams p{1.0, 0.5, 0.5 * kPi, 0.0};
    IntegratorConfig cfg;
    cfg.t_max = 100.0;
    cfg.record_states = true;
    const Trajectory traj = integrate(initial_state_paper(), p, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State ref = analytic_state(traj.times[i], p);
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(traj.states[i].psi[j] - ref.psi[j]));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("integrate: decoupled sites keep their occupations") {
    PlaquetteParams p{1e-300, 0.0, 0.0, 7.0};
    State s0;
    s0.psi = {Complex{0.8, 0.0}, Complex{0.0, 0.6}, {}, {}};
    IntegratorConfig cfg;
    cfg.t_max = 5.0;
    const Trajectory traj = integrate(s0, p, cfg);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.occupations[i].n[0] == doctest::Approx(0.64).epsilon(1e-12));
        CHECK(traj.occupations[i].n[1] == doctest::Approx(0.36).epsilon(1e-12));
    }
}

TEST_CASE("integrate: sampling includes the endpoints") {
    PlaquetteParams p{1.0, 1.0, 0.0, 0.0};
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 1.0;
    cfg.sample_stride = 7;  // does not divide the step count
    const Trajectory traj = integrate(initial_state_paper(), p, cfg);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t i = 1; i < traj.size(); ++i)
        CHECK(traj.times[i] > traj.times[i - 1]);

    // t_max not an integer multiple of dt: final partial step lands exactly
    cfg.t_max = 0.105;
    const Trajectory traj2 = integrate(initial_state_paper(), p, cfg);
    CHECK(traj2.times.back() == doctest::Approx(0.105).epsilon(1e-15));
}

TEST_CASE("integrate: fourth-order endpoint convergence") {
    PlaquetteParams p{1.0, 1.0, 0.5 * kPi, 5.0};
    auto endpoint = [&](double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_max = 10.0;
        cfg.sample_stride = 1 << 30;  // endpoints only
        cfg.record_states = true;
        return integrate(initial_state_paper(), p, cfg).states.back();
    };
    const State ref = endpoint(1.0 / 1024);  // dt/8 reference
    auto err = [&](const State& s) {
        double worst = 0.0;
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(s.psi[j] - ref.psi[j]));
        return worst;
    };
    const double e1 = err(endpoint(1.0 / 128));
    const double e2 = err(endpoint(1.0 / 256));
    const double factor = e1 / e2;
    CHECK(factor >= 12.0);
    CHECK(factor <= 20.0);
}

TEST_CASE("integrate: time reversal returns the initial state") {
    PlaquetteParams p{1.0, 0.8, 0.9, 3.0};
    IntegratorConfig cfg;
    cfg.t_max = 20.0;
    cfg.sample_stride = 1 << 30;
    cfg.record_states = true;
    const Trajectory fwd = integrate(initial_state_paper(), p, cfg);
    State turned = conjugated(fwd.states.back());
    turned.t = 0.0;
    const Trajectory back = integrate(turned, p, cfg);
    const State expect = conjugated(initial_state_paper());
    double worst = 0.0;
    for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::abs(back.states.back().psi[j] - expect.psi[j]));
    CHECK(worst <= 1e-7);
}

TEST_CASE("integrate: tolerance enforcement and renormalization") {
    PlaquetteParams p{1.0, 1.0, 0.5 * kPi, 21.0};
    IntegratorConfig cfg;
    cfg.dt = 0.1;  // far too coarse
    cfg.t_max = 50.0;
    CHECK_THROWS_AS(integrate(initial_state_paper(), p, cfg), ToleranceExceeded);

    cfg.renormalize = true;  // no enforcement, norm projected back each step
    const Trajectory traj = integrate(initial_state_paper(), p, cfg);
    CHECK(traj.max_norm_drift <= 1e-12);

    IntegratorConfig fine;
    fine.t_max = 5.0;
    State denormalized = initial_state_paper();
    denormalized.psi[0] *= 1.1;
    CHECK_THROWS_AS(integrate(denormalized, p, fine), InvalidParams);
}

TEST_CASE("integrate: trajectory vectors share one length") {
    PlaquetteParams p{1.0, 1.0, 1.0, 1.0};
    IntegratorConfig cfg;
    cfg.t_max = 2.0;
    cfg.record_states = true;
    const Trajectory traj = integrate(initial_state_paper(), p, cfg);
    CHECK(traj.occupations.size() == traj.size());
    CHECK(traj.centers.size() == traj.size());
    CHECK(traj.norms.size() == traj.size());
    CHECK(traj.energies.size() == traj.size());
    CHECK(traj.states.size() == traj.size());
}

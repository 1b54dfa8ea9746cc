#include <doctest.h>

#include <cmath>
#include <random>

#include "plaquette/model.hpp"

using namespace plaquette;

namespace {

State random_normalized_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    State s;
    for (auto& a : s.psi) a = Complex{gauss(rng), gauss(rng)};
    const double inv = 1.0 / std::sqrt(s.norm_squared());
    for (auto& a : s.psi) a *= inv;
    return s;
}

}  // namespace

TEST_CASE("params: validation") {
    PlaquetteParams p;
    CHECK_NOTHROW(p.validate());
    p.J = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.J = 1.0;
    p.K = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.K = 1.0;
    p.phi = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.phi = 0.0;
    p.U = std::nan("");
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("initial state: both occupied sites carry sqrt(0.5)") {
    const State s = initial_state_paper();
    const double r = std::sqrt(0.5);
    CHECK(s.psi[0] == Complex{r, 0.0});
    CHECK(s.psi[1] == Complex{0.0, 0.0});
    CHECK(s.psi[2] == Complex{0.0, 0.0});
    CHECK(s.psi[3] == Complex{r, 0.0});
    CHECK(s.t == 0.0);
    CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    const auto occ = occupations(s);
    CHECK(occ.n[0] == doctest::Approx(0.5));
    CHECK(occ.n[1] == 0.0);
    CHECK(occ.n[2] == 0.0);
    CHECK(occ.n[3] == doctest::Approx(0.5));
}

TEST_CASE("gpe_rhs: single-site occupation, U = 0") {
    // state (1,0,0,0): i d psi_2/dt = -K e^{-i phi/2}, i d psi_4/dt = -J
    PlaquetteParams p{1.0, 0.7, 1.3, 0.0};
    State s;
    s.psi = {Complex{1, 0}, {}, {}, {}};
    const auto d = gpe_rhs(s, p);
    const Complex i{0, 1};
    const Complex expected_d2 = i * p.K * std::polar(1.0, -p.phi / 2);
    CHECK(std::abs(d[0]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(d[1] - expected_d2) < 1e-15);
    CHECK(std::abs(d[2]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(d[3] - i * p.J) < 1e-15);
}

TEST_CASE("gpe_rhs: paper initial state, K = J = 1, phi = 0, U = 0") {
    // i d psi_1/dt = -J psi_4 = -sqrt(0.5), so d psi_1/dt = +i sqrt(0.5)
    PlaquetteParams p{1.0, 1.0, 0.0, 0.0};
    const auto d = gpe_rhs(initial_state_paper(), p);
    CHECK(d[0].real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d[0].imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("gpe_rhs: norm-preservation identity over random states") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> uk(0.0, 3.0), uphi(-10.0, 10.0),
        uu(-30.0, 30.0);
    for (int n = 0; n < 100; ++n) {
        PlaquetteParams p{1.0, uk(rng), uphi(rng), uu(rng)};
        const State s = random_normalized_state(rng);
        const auto d = gpe_rhs(s, p);
        double re = 0.0;
        for (int j = 0; j < 4; ++j) re += std::real(std::conj(s.psi[j]) * d[j]);
        CHECK(std::abs(re) < 1e-14);
    }
}

TEST_CASE("gpe_rhs: K = 0 decouples the two y double wells") {
    // pairs (1,4) and (2,3) must evolve with no cross coupling
    PlaquetteParams p{1.0, 0.0, 0.9, 2.0};
    State s;
    s.psi = {Complex{0.6, 0.1}, {}, {}, Complex{0.78, -0.1}};
    auto d = gpe_rhs(s, p);
    CHECK(std::abs(d[1]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(d[2]) == doctest::Approx(0.0).epsilon(1e-15));

    s.psi = {{}, Complex{0.6, 0.1}, Complex{0.78, -0.1}, {}};
    d = gpe_rhs(s, p);
    CHECK(std::abs(d[0]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(d[3]) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("energy: paper initial state") {
    // only the psi_4^* psi_1 + c.c. hopping term and two |psi|^4 = 1/4 terms
    // survive: E = -J + U/4 for the +sqrt(0.5) initial state
    for (double u : {0.0, 4.0, -3.0}) {
        PlaquetteParams p{1.0, 2.0, 0.7, u};
        CHECK(energy(initial_state_paper(), p) ==
              doctest::Approx(-1.0 + u / 4).epsilon(1e-14));
    }
}

TEST_CASE("energy: single site and uniform state") {
    PlaquetteParams p{1.0, 0.8, 0.0, 6.0};
    State one;
    one.psi = {Complex{1, 0}, {}, {}, {}};
    CHECK(energy(one, p) == doctest::Approx(p.U / 2).epsilon(1e-14));

    State uniform;
    uniform.psi = {Complex{0.5, 0}, Complex{0.5, 0}, Complex{0.5, 0}, Complex{0.5, 0}};
    CHECK(energy(uniform, p) ==
          doctest::Approx(-(p.K + p.J) + p.U / 8).epsilon(1e-14));
}

TEST_CASE("energy: invariant under a global phase rotation") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> utheta(-6.3, 6.3), uk(0.0, 2.5),
        uphi(-7.0, 7.0), uu(-20.0, 20.0);
    for (int n = 0; n < 50; ++n) {
        PlaquetteParams p{1.0, uk(rng), uphi(rng), uu(rng)};
        const State s = random_normalized_state(rng);
        const double e0 = energy(s, p);
        State rot = s;
        const Complex phase = std::polar(1.0, utheta(rng));
        for (auto& a : rot.psi) a *= phase;
        CHECK(energy(rot, p) == doctest::Approx(e0).epsilon(1e-12));
    }
}

TEST_CASE("occupations: equal moduli") {
    State s;
    s.psi = {Complex{0, 0.5}, Complex{0.5, 0}, Complex{-0.5, 0}, Complex{0, 0.5}};
    const auto occ = occupations(s);
    for (int j = 0; j < 4; ++j) CHECK(occ.n[j] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(occ.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

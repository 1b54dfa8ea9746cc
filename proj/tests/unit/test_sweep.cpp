#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "plaquette/sweep.hpp"

using namespace plaquette;

namespace {
constexpr double kPi = std::numbers::pi;

// short-horizon settings so grid-structure tests stay fast; the physical
// long-horizon verdicts live in the acceptance suite
IntegratorConfig fast_sim() {
    IntegratorConfig sim;
    sim.dt = 1e-3;
    sim.t_max = 20.0;
    return sim;
}
}  // namespace

TEST_CASE("grid: validation and bit-exact points") {
    GridSpec g{"u", 0.0, 30.0, 61};
    CHECK_NOTHROW(g.validate());
    CHECK(g.point(0) == 0.0);
    CHECK(g.point(60) == 30.0);
    CHECK(g.point(40) == 20.0);  // (30 * 40) / 60 exactly
    const auto pts = g.points();
    CHECK(pts.size() == 61);
    for (int i = 0; i < 61; ++i) CHECK(pts[static_cast<std::size_t>(i)] == g.point(i));

    CHECK_THROWS_AS((GridSpec{"x", 1.0, 0.0, 5}).validate(), InvalidParams);
    CHECK_THROWS_AS((GridSpec{"x", 0.0, 1.0, 1}).validate(), InvalidParams);
}

TEST_CASE("worker count resolution") {
    CHECK(resolve_worker_count(3) == 3);
    CHECK(resolve_worker_count(0) >= 1);
}

TEST_CASE("KU sweep: layout, U = 0 row, determinism across thread counts") {
    const GridSpec k_grid{"k_over_j", 0.5, 1.5, 3};
    const GridSpec u_grid{"u_over_j", 0.0, 24.0, 4};
    const PhaseDiagram pd1 =
        sweep_selftrap_KU(0.5 * kPi, k_grid, u_grid, fast_sim(), {}, 1);
    CHECK(pd1.cells.size() == 12);
    CHECK(pd1.failed_count() == 0);

    // the U = 0 row never self-traps
    for (std::size_t ix = 0; ix < pd1.nx(); ++ix) {
        CHECK(pd1.cell(ix, 0).ok);
        CHECK(!pd1.cell(ix, 0).trapped);
    }

    const PhaseDiagram pd4 =
        sweep_selftrap_KU(0.5 * kPi, k_grid, u_grid, fast_sim(), {}, 4);
    for (std::size_t i = 0; i < pd1.cells.size(); ++i) {
        CHECK(std::memcmp(&pd1.cells[i].average_xc, &pd4.cells[i].average_xc,
                          sizeof(double)) == 0);  // bit-identical
        CHECK(pd1.cells[i].trapped == pd4.cells[i].trapped);
    }
}

TEST_CASE("KU sweep: cells reproducible from provenance") {
    const GridSpec k_grid{"k_over_j", 0.8, 1.2, 2};
    const GridSpec u_grid{"u_over_j", 5.0, 25.0, 3};
    const SweepSettings cls{0.0, -0.5};
    const PhaseDiagram pd = sweep_selftrap_KU(0.5 * kPi, k_grid, u_grid, fast_sim(), cls);

    const std::size_t ix = 1, iy = 2;
    PlaquetteParams p;
    p.K = pd.x_axis.point(static_cast<int>(ix));
    p.U = pd.y_axis.point(static_cast<int>(iy));
    p.phi = pd.fixed_value;
    const Trajectory traj = integrate(initial_state_paper(), p, pd.sim);
    const SelfTrapVerdict v =
        classify_selftrapping(traj, pd.classify.t_start, pd.classify.threshold);
    CHECK(v.average_xc == pd.cell(ix, iy).average_xc);
    CHECK(v.trapped == pd.cell(ix, iy).trapped);
}

TEST_CASE("phiU sweep: verdicts repeat after a 2 pi flux shift") {
    // shared grid covering [0, 4 pi] so columns at phi and phi + 2 pi exist
    const GridSpec phi_grid{"phi", 0.0, 4.0 * kPi, 9};
    const GridSpec u_grid{"u_over_j", 0.0, 24.0, 3};
    IntegratorConfig sim = fast_sim();
    const PhaseDiagram pd = sweep_selftrap_phiU(0.5, phi_grid, u_grid, sim);
    CHECK(pd.failed_count() == 0);
    for (std::size_t ix = 0; ix + 4 < pd.nx(); ++ix)  // +4 steps = +2 pi here
        for (std::size_t iy = 0; iy < pd.ny(); ++iy)
            CHECK(pd.cell(ix, iy).trapped == pd.cell(ix + 4, iy).trapped);
}

TEST_CASE("sweep: failed cells are recorded, not fatal") {
    const GridSpec k_grid{"k_over_j", 0.5, 1.5, 2};
    const GridSpec u_grid{"u_over_j", 0.0, 30.0, 2};
    IntegratorConfig sim = fast_sim();
    sim.dt = 0.2;  // coarse enough to blow the conservation tolerance at U = 30
    sim.norm_tolerance = 1e-10;
    const PhaseDiagram pd = sweep_selftrap_KU(0.5 * kPi, k_grid, u_grid, sim);
    CHECK(pd.failed_count() > 0);
    CHECK(pd.cells.size() == 4);
    for (const auto& c : pd.cells)
        if (!c.ok) CHECK(std::isnan(c.average_xc));
}

TEST_CASE("critical scan: flip bookkeeping and error propagation") {
    PlaquetteParams base{1.0, 1.0, 0.5 * kPi, 0.0};
    const GridSpec u_grid{"u_over_j", 0.0, 30.0, 7};
    const CriticalScan scan = critical_U_scan(base, u_grid, fast_sim());
    CHECK(scan.u_values.size() == 7);
    CHECK(scan.cells.size() == 7);
    // flips are consistent with the per-point verdicts
    std::size_t flips = 0;
    for (std::size_t i = 0; i + 1 < scan.cells.size(); ++i)
        if (scan.cells[i].trapped != scan.cells[i + 1].trapped) ++flips;
    CHECK(scan.flips.size() == flips);
    for (const auto& f : scan.flips) CHECK(f.u_lower < f.u_upper);

    IntegratorConfig bad = fast_sim();
    bad.dt = 0.5;
    bad.norm_tolerance = 1e-12;
    CHECK_THROWS_AS(critical_U_scan(base, u_grid, bad), ToleranceExceeded);
}

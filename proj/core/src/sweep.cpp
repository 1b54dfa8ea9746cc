#include "plaquette/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace plaquette {

namespace {

// Cell-level task queue: workers pull the next index from an atomic counter
// and write into preallocated slots, so results never depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int workers = resolve_worker_count(threads);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto drain = [&] {
        std::size_t i;
        while ((i = next.fetch_add(1)) < n) {
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    }
    if (first_error) std::rethrow_exception(first_error);
}

CellResult run_cell(const PlaquetteParams& params, const IntegratorConfig& sim,
                    const SweepSettings& cls) {
    CellResult cell;
    const Trajectory traj = integrate(initial_state_paper(), params, sim);
    const SelfTrapVerdict v = classify_selftrapping(traj, cls.t_start, cls.threshold);
    cell.average_xc = v.average_xc;
    cell.trapped = v.trapped;
    cell.ok = true;
    return cell;
}

PhaseDiagram run_sweep(SweepKind kind, double fixed_value, const GridSpec& x_grid,
                       const GridSpec& u_grid, const IntegratorConfig& sim,
                       const SweepSettings& cls, int threads) {
    x_grid.validate();
    u_grid.validate();
    sim.validate();
    if (!std::isfinite(fixed_value))
        throw InvalidParams("sweep: fixed parameter must be finite");

    PhaseDiagram pd;
    pd.kind = kind;
    pd.fixed_value = fixed_value;
    pd.x_axis = x_grid;
    pd.y_axis = u_grid;
    pd.sim = sim;
    pd.classify = cls;
    pd.cells.assign(pd.nx() * pd.ny(), CellResult{});

    parallel_for(pd.cells.size(), threads, [&](std::size_t idx) {
        const int ix = static_cast<int>(idx % pd.nx());
        const int iy = static_cast<int>(idx / pd.nx());
        PlaquetteParams p;
        p.J = 1.0;
        p.U = u_grid.point(iy);
        if (kind == SweepKind::k_vs_u) {
            p.K = x_grid.point(ix);
            p.phi = fixed_value;
        } else {
            p.K = fixed_value;
            p.phi = x_grid.point(ix);
        }
        // Blow-ups and tolerance failures are recorded per cell; boundary
        // cells at large U may need a smaller dt, and partial diagrams
        // remain useful.
        try {
            pd.cells[idx] = run_cell(p, sim, cls);
        } catch (const Error&) {
            pd.cells[idx] = CellResult{std::numeric_limits<double>::quiet_NaN(), false, false};
        }
    });
    return pd;
}

}  // namespace

void GridSpec::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw InvalidParams("GridSpec(" + axis + "): need finite min < max");
    if (count < 2) throw InvalidParams("GridSpec(" + axis + "): need count >= 2");
}

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = point(i);
    return pts;
}

std::size_t PhaseDiagram::failed_count() const {
    std::size_t n = 0;
    for (const auto& c : cells)
        if (!c.ok) ++n;
    return n;
}

int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PLAQUETTE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

PhaseDiagram sweep_selftrap_KU(double phi, const GridSpec& k_grid,
                               const GridSpec& u_grid, const IntegratorConfig& sim,
                               const SweepSettings& classify, int threads) {
    for (int i = 0; i < k_grid.count; ++i)
        if (!(k_grid.point(i) >= 0.0))
            throw InvalidParams("sweep_selftrap_KU: K/J grid must be non-negative");
    return run_sweep(SweepKind::k_vs_u, phi, k_grid, u_grid, sim, classify, threads);
}

PhaseDiagram sweep_selftrap_phiU(double k_over_j, const GridSpec& phi_grid,
                                 const GridSpec& u_grid, const IntegratorConfig& sim,
                                 const SweepSettings& classify, int threads) {
    if (!(k_over_j >= 0.0))
        throw InvalidParams("sweep_selftrap_phiU: K/J must be non-negative");
    return run_sweep(SweepKind::phi_vs_u, k_over_j, phi_grid, u_grid, sim, classify,
                     threads);
}

CriticalScan critical_U_scan(const PlaquetteParams& base, const GridSpec& u_grid,
                             const IntegratorConfig& sim, const SweepSettings& classify,
                             int threads) {
    base.validate();
    u_grid.validate();
    sim.validate();

    CriticalScan scan;
    scan.u_values = u_grid.points();
    scan.cells.assign(scan.u_values.size(), CellResult{});

    parallel_for(scan.u_values.size(), threads, [&](std::size_t i) {
        PlaquetteParams p = base;
        p.U = scan.u_values[i];
        scan.cells[i] = run_cell(p, sim, classify);
    });

    for (std::size_t i = 0; i + 1 < scan.cells.size(); ++i) {
        if (scan.cells[i].trapped != scan.cells[i + 1].trapped)
            scan.flips.push_back(
                {scan.u_values[i], scan.u_values[i + 1], scan.cells[i + 1].trapped});
    }
    return scan;
}

}  // namespace plaquette

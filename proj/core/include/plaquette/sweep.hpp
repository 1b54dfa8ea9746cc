#pragma once

#include <string>
#include <vector>

#include "plaquette/analysis.hpp"
#include "plaquette/integrator.hpp"

namespace plaquette {

// Uniform closed grid [min, max] with `count` points. point(i) is a fixed
// formula of (min, max, count, i), so grids are reproducible bit-exactly
// from the spec alone.
struct GridSpec {
    std::string axis;
    double min = 0.0;
    double max = 1.0;
    int count = 2;

    void validate() const;

    double point(int i) const {
        if (i == 0) return min;
        if (i == count - 1) return max;
        return min + (max - min) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
    }

    std::vector<double> points() const;
};

// Classification settings applied to every cell of a sweep.
struct SweepSettings {
    double t_start = 0.0;
    double threshold = kSelfTrapThreshold;
};

struct CellResult {
    double average_xc = 0.0;
    bool trapped = false;
    bool ok = false;  // false: integration failed (recorded, sweep continues)
};

enum class SweepKind { k_vs_u, phi_vs_u };

// Self-trapping classification over a 2-D parameter grid. Cells are stored
// row-major as cells[iy * x_axis.count + ix]; the embedded configuration is
// sufficient to re-run any single cell (initial state is always
// initial_state_paper()).
struct PhaseDiagram {
    SweepKind kind = SweepKind::k_vs_u;
    double fixed_value = 0.0;  // phi for k_vs_u, K/J for phi_vs_u
    GridSpec x_axis;
    GridSpec y_axis;  // always U/J
    IntegratorConfig sim;
    SweepSettings classify;
    std::vector<CellResult> cells;

    std::size_t nx() const { return static_cast<std::size_t>(x_axis.count); }
    std::size_t ny() const { return static_cast<std::size_t>(y_axis.count); }
    const CellResult& cell(std::size_t ix, std::size_t iy) const {
        return cells[iy * nx() + ix];
    }
    std::size_t failed_count() const;
};

// Number of worker threads a sweep will use: `requested` if positive, else
// the PLAQUETTE_THREADS environment variable, else the available hardware
// parallelism. Results are bit-identical for every worker count.
int resolve_worker_count(int requested);

// Fig.-8-style diagram: K/J x U/J at fixed phi.
PhaseDiagram sweep_selftrap_KU(double phi, const GridSpec& k_grid,
                               const GridSpec& u_grid, const IntegratorConfig& sim,
                               const SweepSettings& classify = {}, int threads = 0);

// Fig.-9-style diagram: phi x U/J at fixed K/J.
PhaseDiagram sweep_selftrap_phiU(double k_over_j, const GridSpec& phi_grid,
                                 const GridSpec& u_grid, const IntegratorConfig& sim,
                                 const SweepSettings& classify = {}, int threads = 0);

// A verdict flip between two adjacent grid points of a 1-D interaction scan.
struct TransitionInterval {
    double u_lower = 0.0;
    double u_upper = 0.0;
    bool to_trapped = false;  // verdict on the upper side of the flip
};

// Classification along a U grid at fixed (K, phi). One flip marks a plain
// transition; three or more mark re-entrant self-trapping windows.
// Integration errors propagate (no per-cell recording here).
struct CriticalScan {
    std::vector<double> u_values;
    std::vector<CellResult> cells;
    std::vector<TransitionInterval> flips;
};

CriticalScan critical_U_scan(const PlaquetteParams& base, const GridSpec& u_grid,
                             const IntegratorConfig& sim,
                             const SweepSettings& classify = {}, int threads = 0);

}  // namespace plaquette

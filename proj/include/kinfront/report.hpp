#pragma once

#include <cstddef>
#include <vector>

#include "kinfront/grid.hpp"
#include "kinfront/model.hpp"
#include "kinfront/solver_config.hpp"

namespace kinfront {

/// Invariant bookkeeping accumulated over every step of a run, not only the
/// recorded ones.
struct InvariantSummary {
    std::size_t steps = 0;
    std::size_t bound_violations = 0;    ///< nodal values outside [-tol, b^*/gamma + tol]
    double worst_bound_excess = 0.0;     ///< largest distance outside that interval
    bool front_monotone = true;          ///< s^{n+1} >= s^n at every step
    double worst_growth_excess = 0.0;    ///< max of s^n - (s0 + a0*(b^*/gamma)*t^n)
    std::size_t picard_iters_total = 0;
    std::size_t picard_iters_max = 0;
    double picard_ratio_max = 0.0;
};

struct SolveReport {
    std::vector<double> times;
    std::vector<double> fronts;
    std::vector<double> front_speeds;
    std::vector<double> u_at_0;
    std::vector<double> u_at_1;
    std::vector<double> masses;
    std::vector<double> mass_residuals;
    std::vector<double> energies;
    std::vector<double> u_min;
    std::vector<double> u_max;

    ProblemSpec spec;
    Grid grid;
    SolverConfig config;
    std::size_t output_stride = 1;
    double wall_seconds = 0.0;
    InvariantSummary invariants;
    TransformedState final_state;

    std::size_t size() const noexcept { return times.size(); }
};

}  // namespace kinfront

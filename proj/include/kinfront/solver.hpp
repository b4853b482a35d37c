#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kinfront/grid.hpp"
#include "kinfront/model.hpp"
#include "kinfront/report.hpp"
#include "kinfront/solver_config.hpp"

namespace kinfront {

struct StepDiagnostics {
    std::size_t picard_iters = 1;
    std::vector<double> picard_ratios;  ///< successive endpoint-change ratios
    double front_speed = 0.0;
    double linear_solve_residual = 0.0;
};

/// A step could not be completed; the caller should reduce dt.
class StepRejected : public std::runtime_error {
public:
    StepRejected(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Step-size heuristic: the front may advance at most 5% of s0 per step at
/// its largest admissible speed a0*b^*/gamma, capped at 0.02 time units.
double suggest_dt(const ProblemSpec& spec);

/// a0 * sigma(u_tilde at y = 1).
double front_speed(const TransformedState& state, const ProblemSpec& spec);

struct StepResult {
    TransformedState state;
    StepDiagnostics diagnostics;
};

/// One backward-Euler step of length `dt`.
///
/// The front moves first with the lagged speed v = a0*sigma(u*(1)), then the
/// field is solved implicitly on [0, 1] with the new front position. The
/// Robin condition at y = 0 and the kinetic flux at y = 1 are eliminated
/// through ghost nodes, so the system stays tridiagonal. With Picard enabled
/// the pair is re-solved with u*(1) set to the latest endpoint value until
/// the endpoint change drops below the tolerance.
StepResult step(const TransformedState& state, const ProblemSpec& spec, double dt, const SolverConfig& config);

inline StepResult step(const TransformedState& state, const ProblemSpec& spec, const Grid& grid,
                       const SolverConfig& config) {
    return step(state, spec, grid.dt, config);
}

/// Integrates from t = 0 to grid.t_end, recording every `output_stride`-th
/// step (and step 0). Throws StepRejected carrying the failing time.
SolveReport run(const ProblemSpec& spec, const Grid& grid, const SolverConfig& config,
                std::size_t output_stride = 1);

}  // namespace kinfront

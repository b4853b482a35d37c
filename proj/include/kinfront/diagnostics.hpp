#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinfront/grid.hpp"
#include "kinfront/model.hpp"
#include "kinfront/report.hpp"
#include "kinfront/solver_config.hpp"

namespace kinfront {

class InvalidWindow : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotAsymptotic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotUnimodal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Power-law fitting

struct PowerLawFit {
    double exponent = 0.0;   ///< beta_hat in s ~ c * t^beta_hat
    double prefactor = 0.0;  ///< c_hat
    double r_squared = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::size_t samples = 0;
};

/// Least squares of log(values) against log(times) over samples whose time
/// lies in [t_lo, t_hi]. Throws InvalidWindow for fewer than 10 samples or
/// any nonpositive time/value in the window.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values, double t_lo,
                          double t_hi);

/// Fits the front series of `report`. With `subtract_s0` the fit is applied
/// to s(t) - s0 instead of s(t).
PowerLawFit fit_power_law(const SolveReport& report, double t_lo, double t_hi, bool subtract_s0 = false);

/// Default tail window [T/2, T].
PowerLawFit fit_power_law(const SolveReport& report, bool subtract_s0 = false);

// ---------------------------------------------------------------------------
// Convergence orders

/// Observed order log2((q0 - q1) / (q1 - q2)) from a sequence refined by a
/// factor of two. Throws NotAsymptotic when successive differences vanish,
/// change sign, or do not shrink.
double observed_order(double coarse, double medium, double fine);

/// Terminal front positions s(T) for each grid, in order. Throws
/// std::invalid_argument when two grids coincide.
std::vector<double> refinement_study(const ProblemSpec& spec, std::span<const Grid> grids,
                                     const SolverConfig& config);

struct ConvergenceOrders {
    double temporal = 0.0;
    double spatial = 0.0;
    std::vector<double> temporal_values;  ///< s(T) at dt, dt/2, dt/4
    std::vector<double> spatial_values;   ///< s(T) at N, 2N, 4N
};

struct RichardsonPlan {
    Grid temporal_base;  ///< fine N, coarsest dt
    Grid spatial_base;   ///< coarsest N, small dt
};

/// Temporal order from (dt, dt/2, dt/4) at `plan.temporal_base.n_cells`,
/// spatial order from (N, 2N, 4N) at `plan.spatial_base.dt`.
ConvergenceOrders richardson_orders(const ProblemSpec& spec, const RichardsonPlan& plan, const SolverConfig& config);

/// Convenience form: temporal study at 4*base.n_cells, spatial study at base.dt/16.
ConvergenceOrders richardson_orders(const ProblemSpec& spec, const Grid& base, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Stationary problem

struct StationaryResidual {
    double value = 0.0;        ///< violation of u_inf(1) = 0 by the unique BVP solution
    bool admissible = true;    ///< false when b_infinity falls outside (A2)'
};

/// Closed-form residual of the would-be steady state: the two-point problem
/// with zero flux at y = 1 forces the constant b_inf/gamma, which then
/// violates u(1) = 0 by exactly that amount. Throws std::invalid_argument if
/// the spec has no b_infinity.
StationaryResidual stationary_residual(const ProblemSpec& spec);

// ---------------------------------------------------------------------------
// Calibration

struct Observation {
    double t;
    double s;
};

struct CalibrationResult {
    double a0 = 0.0;
    double sse = 0.0;
    bool at_bracket_edge = false;
    std::size_t evaluations = 0;
};

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    bool at_bracket_edge = false;
    std::size_t evaluations = 0;
};

/// Golden-section search for a minimum of f over [lo, hi] with 0 < lo < hi,
/// carried out on log(x) until the log-bracket is narrower than `rel_tol`.
/// Results within 2*rel_tol (in log) of either edge are flagged; an interior
/// result beaten by an endpoint value throws NotUnimodal.
ScalarMinimum golden_section_log(const std::function<double(double)>& f, double lo, double hi, double rel_tol);

/// Linear interpolation of the recorded front series at time t.
double front_at(const SolveReport& report, double t);

/// Sum of squared front misfits for one forward run with the given a0.
double calibration_objective(const ProblemSpec& spec_template, double a0, const Grid& grid,
                             const SolverConfig& config, std::span<const Observation> observed);

/// Minimises calibration_objective over a0 in [a0_lo, a0_hi] with
/// golden_section_log.
CalibrationResult calibrate_a0(const ProblemSpec& spec_template, const Grid& grid, const SolverConfig& config,
                               std::span<const Observation> observed, double a0_lo, double a0_hi,
                               double rel_tol = 1e-3);

// ---------------------------------------------------------------------------
// Picard contraction

struct ContractionProbe {
    bool contracting = false;       ///< every ratio < 1 and every step converged
    std::size_t max_iters = 0;
    double max_ratio = 0.0;
};

/// Runs `steps` Picard steps of size dt from the initial state.
ContractionProbe probe_contraction(const ProblemSpec& spec, std::size_t n_cells, double dt, std::size_t steps,
                                   const SolverConfig& config);

struct ContractionSearch {
    double dt_contraction = 0.0;
    ContractionProbe probe;  ///< probe at dt_contraction
};

/// Bisection on dt in [dt_lo, dt_hi] for the largest step at which the
/// probe contracts within `iter_limit` iterations. Throws std::runtime_error
/// if even dt_lo fails.
ContractionSearch find_contraction_dt(const ProblemSpec& spec, std::size_t n_cells, std::size_t steps,
                                      const SolverConfig& config, double dt_lo, double dt_hi,
                                      std::size_t iter_limit = 10, std::size_t bisections = 30);

}  // namespace kinfront

#include "kinfront/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "kinfront/tridiagonal.hpp"

namespace kinfront {

void SolverConfig::validate() const {
    if (picard) {
        if (picard->max_iters < 1) throw std::invalid_argument("picard.max_iters must be at least 1");
        if (!(picard->tol > 0.0)) throw std::invalid_argument("picard.tol must be positive");
    }
    if (!(bounds_tol >= 0.0)) throw std::invalid_argument("bounds_tol must be nonnegative");
}

double suggest_dt(const ProblemSpec& spec) {
    const double max_speed = spec.a0 * spec.u_max();
    if (!(max_speed > 0.0)) return 0.02;
    return std::min(0.02, 0.05 * spec.s0 / max_speed);
}

double front_speed(const TransformedState& state, const ProblemSpec& spec) {
    return spec.a0 * sigma(state.u_tilde.back());
}

namespace {

/// Assembles the implicit field system for a fixed new front position
/// `s_new` and kinetic coefficient `speed` = a0*sigma(u*(1)).
TridiagonalSystem assemble(const TransformedState& prev, const ProblemSpec& spec, double dt,
                           double s_new, double speed, double b_new, AdvectionScheme scheme) {
    const std::size_t n = prev.u_tilde.size() - 1;
    const double h = 1.0 / static_cast<double>(n);
    const double diff = 1.0 / (s_new * s_new * h * h);
    const double inv_dt = 1.0 / dt;

    TridiagonalSystem sys(n + 1);

    // y = 0: ghost node u_{-1} = u_1 + 2 h s beta (b - gamma u_0).
    sys.diag[0] = inv_dt + 2.0 * diff + 2.0 * spec.beta * spec.gamma / (s_new * h);
    sys.upper[0] = -2.0 * diff;
    sys.rhs[0] = prev.u_tilde[0] * inv_dt + 2.0 * spec.beta * b_new / (s_new * h);

    for (std::size_t i = 1; i < n; ++i) {
        const double adv = static_cast<double>(i) * h * speed / s_new;
        if (scheme == AdvectionScheme::central) {
            sys.lower[i] = -diff + adv / (2.0 * h);
            sys.diag[i] = inv_dt + 2.0 * diff;
            sys.upper[i] = -diff - adv / (2.0 * h);
        } else {
            // Characteristics run toward y = 0, so the upwind neighbour is i+1.
            sys.lower[i] = -diff;
            sys.diag[i] = inv_dt + 2.0 * diff + adv / h;
            sys.upper[i] = -diff - adv / h;
        }
        sys.rhs[i] = prev.u_tilde[i] * inv_dt;
    }

    // y = 1: ghost node u_{N+1} = u_{N-1} - 2 h s k u_N with k = speed; the
    // advection term uses the same boundary derivative u_y = -s k u_N.
    sys.lower[n] = -2.0 * diff;
    sys.diag[n] = inv_dt + 2.0 * diff + 2.0 * speed / (s_new * h) + speed * speed;
    sys.rhs[n] = prev.u_tilde[n] * inv_dt;
    return sys;
}

struct FieldSolve {
    double s_new;
    double speed;
    std::vector<double> u;
    double residual;
};

FieldSolve solve_field(const TransformedState& prev, const ProblemSpec& spec, double dt, double endpoint_guess,
                       AdvectionScheme scheme) {
    const double speed = spec.a0 * sigma(endpoint_guess);
    const double s_new = prev.s + dt * speed;
    const double t_new = prev.t + dt;
    TridiagonalSystem sys = assemble(prev, spec, dt, s_new, speed, eval_b(spec, t_new), scheme);

    if (const std::size_t row = sys.first_non_dominant_row(); row != sys.size()) {
        std::ostringstream os;
        os << "step rejected, reduce dt: row " << row << " of the field system is not diagonally dominant";
        throw StepRejected(os.str(), prev.t);
    }
    std::vector<double> u;
    try {
        u = solve_thomas(sys);
    } catch (const SolveBreakdown& e) {
        throw StepRejected(std::string("step rejected, reduce dt: ") + e.what(), prev.t);
    }
    const double res = sys.residual(u);
    return {s_new, speed, std::move(u), res};
}

}  // namespace

StepResult step(const TransformedState& state, const ProblemSpec& spec, double dt, const SolverConfig& config) {
    StepDiagnostics diag;
    FieldSolve sol = solve_field(state, spec, dt, state.u_tilde.back(), config.advection);

    if (config.picard) {
        const PicardOptions& opts = *config.picard;
        double prev_endpoint = state.u_tilde.back();
        double prev_change = std::abs(sol.u.back() - prev_endpoint);
        std::size_t iters = 1;
        while (prev_change >= opts.tol) {
            if (iters >= opts.max_iters) {
                std::ostringstream os;
                os << "step rejected, reduce dt: Picard iteration did not converge in " << opts.max_iters
                   << " iterations (last endpoint change " << prev_change << ")";
                throw StepRejected(os.str(), state.t);
            }
            prev_endpoint = sol.u.back();
            sol = solve_field(state, spec, dt, prev_endpoint, config.advection);
            ++iters;
            const double change = std::abs(sol.u.back() - prev_endpoint);
            diag.picard_ratios.push_back(change / prev_change);
            prev_change = change;
        }
        diag.picard_iters = iters;
    }

    diag.front_speed = sol.speed;
    diag.linear_solve_residual = sol.residual;
    return {TransformedState{state.t + dt, sol.s_new, std::move(sol.u)}, std::move(diag)};
}

SolveReport run(const ProblemSpec& spec, const Grid& grid, const SolverConfig& config, std::size_t output_stride) {
    grid.validate();
    config.validate();
    if (output_stride < 1) throw std::invalid_argument("output_stride must be at least 1");

    const auto started = std::chrono::steady_clock::now();

    SolveReport report;
    report.spec = spec;
    report.grid = grid;
    report.config = config;
    report.output_stride = output_stride;

    TransformedState state = initial_state(spec, grid.n_cells);
    const double mass0 = physical_mass(state);
    const double cap = spec.u_max();
    double influx = 0.0;
    InvariantSummary& inv = report.invariants;

    auto check_bounds = [&](const TransformedState& st) {
        for (double v : st.u_tilde) {
            const double excess = std::max(-config.bounds_tol - v, v - cap - config.bounds_tol);
            if (excess > 0.0) {
                ++inv.bound_violations;
                inv.worst_bound_excess = std::max(inv.worst_bound_excess, excess + config.bounds_tol);
            }
        }
        const double envelope = spec.s0 + spec.a0 * cap * st.t;
        inv.worst_growth_excess = std::max(inv.worst_growth_excess, st.s - envelope);
    };

    auto record = [&](const TransformedState& st, double speed) {
        report.times.push_back(st.t);
        report.fronts.push_back(st.s);
        report.front_speeds.push_back(speed);
        report.u_at_0.push_back(st.u_tilde.front());
        report.u_at_1.push_back(st.u_tilde.back());
        const double mass = physical_mass(st);
        report.masses.push_back(mass);
        report.mass_residuals.push_back(mass - mass0 - influx);
        report.energies.push_back(psi_energy(st, spec));
        const auto [lo, hi] = std::minmax_element(st.u_tilde.begin(), st.u_tilde.end());
        report.u_min.push_back(*lo);
        report.u_max.push_back(*hi);
    };

    check_bounds(state);
    record(state, front_speed(state, spec));

    const std::size_t steps = grid.n_steps();
    for (std::size_t n = 0; n < steps; ++n) {
        const double t_next = grid.time_at(n + 1);
        StepResult res;
        try {
            res = step(state, spec, t_next - state.t, config);
        } catch (const StepRejected& e) {
            std::ostringstream os;
            os << e.what() << " (at t = " << state.t << ")";
            throw StepRejected(os.str(), state.t);
        }
        res.state.t = t_next;
        if (!(res.state.s >= state.s)) inv.front_monotone = false;

        const double dt = t_next - state.t;
        influx += dt * spec.beta * (eval_b(spec, t_next) - spec.gamma * res.state.u_tilde.front());

        const StepDiagnostics& d = res.diagnostics;
        inv.picard_iters_total += d.picard_iters;
        inv.picard_iters_max = std::max(inv.picard_iters_max, d.picard_iters);
        for (double r : d.picard_ratios) inv.picard_ratio_max = std::max(inv.picard_ratio_max, r);

        state = std::move(res.state);
        ++inv.steps;
        check_bounds(state);
        if ((n + 1) % output_stride == 0) record(state, d.front_speed);
    }

    report.final_state = std::move(state);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace kinfront

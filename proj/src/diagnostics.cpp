#include "kinfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinfront/solver.hpp"

namespace kinfront {

PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values, double t_lo,
                          double t_hi) {
    if (times.size() != values.size()) throw InvalidWindow("times and values differ in length");
    if (!(t_lo < t_hi)) throw InvalidWindow("power-law window needs t_lo < t_hi");

    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (!(times[i] > 0.0) || !(values[i] > 0.0)) {
            std::ostringstream os;
            os << "power-law window contains a nonpositive sample at t = " << times[i];
            throw InvalidWindow(os.str());
        }
        lx.push_back(std::log(times[i]));
        ly.push_back(std::log(values[i]));
    }
    if (lx.size() < 10) {
        std::ostringstream os;
        os << "power-law window [" << t_lo << ", " << t_hi << "] holds " << lx.size()
           << " samples, at least 10 required";
        throw InvalidWindow(os.str());
    }

    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw InvalidWindow("power-law window spans a single time value");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double sse = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
        sse += r * r;
    }
    // A constant series is fitted exactly by a zero slope.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.samples = lx.size();
    return fit;
}

PowerLawFit fit_power_law(const SolveReport& report, double t_lo, double t_hi, bool subtract_s0) {
    if (!subtract_s0) return fit_power_law(report.times, report.fronts, t_lo, t_hi);
    std::vector<double> shifted(report.fronts.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = report.fronts[i] - report.spec.s0;
    return fit_power_law(report.times, shifted, t_lo, t_hi);
}

PowerLawFit fit_power_law(const SolveReport& report, bool subtract_s0) {
    const double t_end = report.times.back();
    return fit_power_law(report, 0.5 * t_end, t_end, subtract_s0);
}

double observed_order(double coarse, double medium, double fine) {
    const double d1 = coarse - medium;
    const double d2 = medium - fine;
    if (d1 == 0.0 || d2 == 0.0) {
        throw NotAsymptotic("refinement produced identical values; not in asymptotic regime, refine further");
    }
    if ((d1 > 0.0) != (d2 > 0.0) || std::abs(d2) >= std::abs(d1)) {
        std::ostringstream os;
        os << "non-monotone difference ratios (" << d1 << ", " << d2
           << "); not in asymptotic regime, refine further";
        throw NotAsymptotic(os.str());
    }
    return std::log2(d1 / d2);
}

std::vector<double> refinement_study(const ProblemSpec& spec, std::span<const Grid> grids,
                                     const SolverConfig& config) {
    for (std::size_t i = 0; i < grids.size(); ++i) {
        for (std::size_t j = i + 1; j < grids.size(); ++j) {
            if (grids[i] == grids[j]) {
                throw std::invalid_argument("refinement study received the same grid twice");
            }
        }
    }
    std::vector<double> out;
    out.reserve(grids.size());
    for (const Grid& g : grids) out.push_back(run(spec, g, config, g.n_steps()).fronts.back());
    return out;
}

ConvergenceOrders richardson_orders(const ProblemSpec& spec, const RichardsonPlan& plan, const SolverConfig& config) {
    ConvergenceOrders out;

    std::vector<Grid> temporal(3, plan.temporal_base);
    temporal[1].dt = plan.temporal_base.dt / 2.0;
    temporal[2].dt = plan.temporal_base.dt / 4.0;
    out.temporal_values = refinement_study(spec, temporal, config);
    out.temporal = observed_order(out.temporal_values[0], out.temporal_values[1], out.temporal_values[2]);

    std::vector<Grid> spatial(3, plan.spatial_base);
    spatial[1].n_cells = plan.spatial_base.n_cells * 2;
    spatial[2].n_cells = plan.spatial_base.n_cells * 4;
    out.spatial_values = refinement_study(spec, spatial, config);
    out.spatial = observed_order(out.spatial_values[0], out.spatial_values[1], out.spatial_values[2]);
    return out;
}

ConvergenceOrders richardson_orders(const ProblemSpec& spec, const Grid& base, const SolverConfig& config) {
    RichardsonPlan plan{base, base};
    plan.temporal_base.n_cells = base.n_cells * 4;
    plan.spatial_base.dt = base.dt / 16.0;
    return richardson_orders(spec, plan, config);
}

StationaryResidual stationary_residual(const ProblemSpec& spec) {
    if (!spec.b_infinity) throw std::invalid_argument("stationary_residual needs b_infinity");
    const double binf = *spec.b_infinity;
    StationaryResidual out;
    out.value = binf / spec.gamma;
    out.admissible = binf > 0.0 && binf >= spec.b_lower && binf <= spec.b_upper;
    return out;
}

double front_at(const SolveReport& report, double t) {
    const auto& ts = report.times;
    const auto& ss = report.fronts;
    if (t <= ts.front()) return ss.front();
    if (t >= ts.back()) return ss.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return ss[lo] + w * (ss[hi] - ss[lo]);
}

double calibration_objective(const ProblemSpec& spec_template, double a0, const Grid& grid,
                             const SolverConfig& config, std::span<const Observation> observed) {
    ProblemSpec spec = spec_template;
    spec.a0 = a0;
    const SolveReport report = run(spec, grid, config);
    double sse = 0.0;
    for (const Observation& o : observed) {
        const double r = front_at(report, o.t) - o.s;
        sse += r * r;
    }
    return sse;
}

ScalarMinimum golden_section_log(const std::function<double(double)>& f, double lo_x, double hi_x,
                                 double rel_tol) {
    if (!(lo_x > 0.0) || !(hi_x > lo_x)) throw std::invalid_argument("search bracket needs 0 < lo < hi");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("search tolerance must be positive");

    ScalarMinimum out;
    auto g = [&](double log_x) {
        ++out.evaluations;
        return f(std::exp(log_x));
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double lo0 = std::log(lo_x);
    const double hi0 = std::log(hi_x);
    double lo = lo0;
    double hi = hi0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = g(c);
    double fd = g(d);
    while (hi - lo > rel_tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = g(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = g(d);
        }
    }
    const double best = fc <= fd ? c : d;
    out.x = std::exp(best);
    out.value = std::min(fc, fd);

    const double edge_tol = 2.0 * rel_tol;
    if (best - lo0 <= edge_tol || hi0 - best <= edge_tol) {
        out.at_bracket_edge = true;
        return out;
    }
    const double f_lo = g(lo0);
    const double f_hi = g(hi0);
    if (out.value > std::min(f_lo, f_hi)) {
        std::ostringstream os;
        os << "objective not unimodal on [" << lo_x << ", " << hi_x
           << "]: a bracket endpoint beats the interior minimum; widen or split bracket";
        throw NotUnimodal(os.str());
    }
    return out;
}

CalibrationResult calibrate_a0(const ProblemSpec& spec_template, const Grid& grid, const SolverConfig& config,
                               std::span<const Observation> observed, double a0_lo, double a0_hi,
                               double rel_tol) {
    if (observed.empty()) throw std::invalid_argument("calibration needs at least one observation");
    if (!(a0_lo > 0.0) || !(a0_hi > a0_lo)) throw std::invalid_argument("calibration bracket needs 0 < a0_lo < a0_hi");
    for (const Observation& o : observed) {
        if (!(o.t > 0.0) || o.t > grid.t_end) {
            throw std::invalid_argument("observation times must lie in (0, t_end]");
        }
    }
    const ScalarMinimum m = golden_section_log(
        [&](double a0) { return calibration_objective(spec_template, a0, grid, config, observed); }, a0_lo, a0_hi,
        rel_tol);
    return CalibrationResult{m.x, m.value, m.at_bracket_edge, m.evaluations};
}

ContractionProbe probe_contraction(const ProblemSpec& spec, std::size_t n_cells, double dt, std::size_t steps,
                                   const SolverConfig& config) {
    SolverConfig cfg = config;
    if (!cfg.picard) cfg.picard = PicardOptions{};
    ContractionProbe probe;
    probe.contracting = true;
    TransformedState state = initial_state(spec, n_cells);
    for (std::size_t n = 0; n < steps; ++n) {
        StepResult res;
        try {
            res = step(state, spec, dt, cfg);
        } catch (const StepRejected&) {
            probe.contracting = false;
            return probe;
        }
        probe.max_iters = std::max(probe.max_iters, res.diagnostics.picard_iters);
        for (double r : res.diagnostics.picard_ratios) {
            probe.max_ratio = std::max(probe.max_ratio, r);
            if (!(r < 1.0)) probe.contracting = false;
        }
        state = std::move(res.state);
    }
    return probe;
}

ContractionSearch find_contraction_dt(const ProblemSpec& spec, std::size_t n_cells, std::size_t steps,
                                      const SolverConfig& config, double dt_lo, double dt_hi,
                                      std::size_t iter_limit, std::size_t bisections) {
    auto passes = [&](const ContractionProbe& p) { return p.contracting && p.max_iters <= iter_limit; };

    ContractionProbe at_hi = probe_contraction(spec, n_cells, dt_hi, steps, config);
    if (passes(at_hi)) return {dt_hi, at_hi};
    ContractionProbe at_lo = probe_contraction(spec, n_cells, dt_lo, steps, config);
    if (!passes(at_lo)) throw std::runtime_error("Picard iteration does not contract even at the smallest dt");

    double good = dt_lo;
    double bad = dt_hi;
    ContractionProbe best = at_lo;
    for (std::size_t k = 0; k < bisections; ++k) {
        const double mid = std::sqrt(good * bad);
        ContractionProbe p = probe_contraction(spec, n_cells, mid, steps, config);
        if (passes(p)) {
            good = mid;
            best = p;
        } else {
            bad = mid;
        }
    }
    return {good, best};
}

}  // namespace kinfront

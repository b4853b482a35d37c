// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kinfront/commands.hpp"
#include "kinfront/diagnostics.hpp"
#include "kinfront/output.hpp"
#include "kinfront/solver.hpp"
#include "reference_specs.hpp"

using namespace kinfront;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<ProblemSpec> random_specs(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<ProblemSpec> out;
    for (int k = 0; k < count; ++k) out.push_back(testing::random_spec(rng));
    return out;
}

Outcome trivial_state() {
    const ProblemSpec spec = testing::zero_spec();
    const SolveReport r = run(spec, Grid{64, 1e-3, 10.0}, SolverConfig{});
    double max_u = 0.0;
    for (double v : r.final_state.u_tilde) max_u = std::max(max_u, std::abs(v));
    for (std::size_t i = 0; i < r.size(); ++i) max_u = std::max({max_u, std::abs(r.u_min[i]), std::abs(r.u_max[i])});
    const bool pass = max_u == 0.0 && r.fronts.back() == spec.s0 && r.invariants.steps == 10000;
    return {pass, "max|u| = " + fmt("%.3g", max_u) + ", s(T) - s0 = " + fmt("%.3g", r.fronts.back() - spec.s0)};
}

std::vector<SolveReport> random_upwind_runs() {
    SolverConfig cfg;
    cfg.advection = AdvectionScheme::upwind;
    std::vector<SolveReport> out;
    for (const ProblemSpec& spec : random_specs(4303, 20)) {
        out.push_back(run(spec, Grid{64, suggest_dt(spec), 5.0}, cfg));
    }
    return out;
}

Outcome bounds(const std::vector<SolveReport>& runs) {
    std::size_t violations = 0;
    double worst = 0.0;
    for (const SolveReport& r : runs) {
        const double hi = r.spec.u_max();
        violations += r.invariants.bound_violations;
        for (std::size_t i = 0; i < r.size(); ++i) {
            worst = std::max({worst, -r.u_min[i], r.u_max[i] - hi});
            if (r.u_min[i] < -1e-10 || r.u_max[i] > hi + 1e-10) ++violations;
        }
    }
    return {violations == 0, std::to_string(runs.size()) + " runs, worst excess " + fmt("%.3g", worst)};
}

Outcome monotone_front(const std::vector<SolveReport>& runs) {
    bool pass = true;
    double worst = -INFINITY;
    for (const SolveReport& r : runs) {
        pass = pass && r.invariants.front_monotone && r.invariants.worst_growth_excess <= 1e-12;
        for (std::size_t i = 1; i < r.size(); ++i) pass = pass && r.fronts[i] >= r.fronts[i - 1];
        worst = std::max(worst, r.invariants.worst_growth_excess);
    }
    return {pass, "max s - envelope = " + fmt("%.3g", worst)};
}

Outcome mass_rate() {
    const ProblemSpec spec = testing::smooth_spec();
    std::vector<double> res;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        res.push_back(std::abs(run(spec, Grid{256, dt, 1.0}, SolverConfig{}).mass_residuals.back()));
    }
    const double r1 = res[0] / res[1];
    const double r2 = res[1] / res[2];
    const bool pass = std::abs(r1 - 2.0) <= 0.3 && std::abs(r2 - 2.0) <= 0.3;
    return {pass, "ratios " + fmt("%.4f", r1) + ", " + fmt("%.4f", r2)};
}

Outcome orders() {
    const ConvergenceOrders o = richardson_orders(testing::smooth_spec(), Grid{32, 0.01, 1.0}, SolverConfig{});
    const bool pass = std::abs(o.temporal - 1.0) <= 0.2 && std::abs(o.spatial - 2.0) <= 0.3;
    return {pass, "temporal " + fmt("%.4f", o.temporal) + ", spatial " + fmt("%.4f", o.spatial)};
}

Outcome picard() {
    SolverConfig cfg;
    cfg.picard = PicardOptions{50, 1e-12};
    const ProblemSpec spec = testing::smooth_spec();
    const ContractionSearch found = find_contraction_dt(spec, 64, 20, cfg, 1e-5, 1.0);
    bool pass = true;
    double worst_ratio = 0.0;
    std::size_t worst_iters = 0;
    for (double f : {1.0, 0.5, 0.25, 0.1, 0.01}) {
        const ContractionProbe p = probe_contraction(spec, 64, f * found.dt_contraction, 20, cfg);
        pass = pass && p.contracting && p.max_ratio < 1.0 && p.max_iters <= 10;
        worst_ratio = std::max(worst_ratio, p.max_ratio);
        worst_iters = std::max(worst_iters, p.max_iters);
    }
    return {pass, "dt_contraction = " + fmt("%.4g", found.dt_contraction) + ", max ratio " +
                      fmt("%.3f", worst_ratio) + ", max iterations " + std::to_string(worst_iters)};
}

Outcome stationary() {
    bool pass = true;
    double worst = 0.0;
    int checked = 0;
    for (const ProblemSpec& spec : random_specs(717, 200)) {
        if (!spec.b_infinity) continue;
        const StationaryResidual r = stationary_residual(spec);
        const double closed = *spec.b_infinity / spec.gamma;
        worst = std::max(worst, std::abs(r.value - closed));
        pass = pass && r.admissible && std::abs(r.value - closed) <= 1e-15 &&
               r.value >= spec.b_lower / spec.gamma && spec.b_lower / spec.gamma > 0.0;
        ++checked;
    }
    pass = pass && checked > 0;
    return {pass, std::to_string(checked) + " specs, max |residual - b_inf/gamma| = " + fmt("%.3g", worst)};
}

SolveReport growth_run(double dt) {
    Grid g = testing::growth_grid();
    g.dt = dt;
    return run(testing::growth_spec(), g, SolverConfig{});
}

Outcome growth(const SolveReport& base) {
    const SolveReport half = growth_run(testing::growth_grid().dt / 2.0);
    const PowerLawFit f1 = fit_power_law(base);
    const PowerLawFit f2 = fit_power_law(half);
    const double s0 = base.spec.s0;
    const bool pass = base.fronts.back() > 3.0 * s0 && base.front_speeds.back() > 0.0 && f1.exponent > 0.3 &&
                      f1.exponent < 0.6 && f1.r_squared > 0.99 && std::abs(f1.exponent - f2.exponent) <= 0.05;
    return {pass, "s(T)/s0 = " + fmt("%.4g", base.fronts.back() / s0) + ", beta_hat = " + fmt("%.4f", f1.exponent) +
                      " (dt/2: " + fmt("%.4f", f2.exponent) + "), r2 = " + fmt("%.6f", f1.r_squared)};
}

Outcome energy(const SolveReport& base) {
    const auto& e = base.energies;
    const bool finite = std::all_of(e.begin(), e.end(), [](double v) { return std::isfinite(v); });
    const auto at = static_cast<std::size_t>(std::max_element(e.begin(), e.end()) - e.begin());
    const double t_max = base.times[at];
    const bool pass = finite && t_max < 0.5 * base.times.back();
    return {pass, "max psi = " + fmt("%.4g", e[at]) + " at t = " + fmt("%.4g", t_max)};
}

Outcome calibration() {
    ProblemSpec spec = testing::smooth_spec();
    spec.u0 = InitialProfile::constant(0.0);
    const Grid grid{48, 0.05, 40.0};
    const SolverConfig cfg;
    bool pass = true;
    std::string detail;
    for (double a0 : {0.1, 0.3, 1.0}) {
        ProblemSpec gen = spec;
        gen.a0 = a0;
        const SolveReport r = run(gen, grid, cfg);
        std::vector<Observation> obs;
        for (int k = 1; k <= 8; ++k) obs.push_back({5.0 * k, front_at(r, 5.0 * k)});
        const CalibrationResult c = calibrate_a0(spec, grid, cfg, obs, 1e-3, 1e2);
        const double rel = std::abs(c.a0 - a0) / a0;
        pass = pass && rel <= 0.05 && !c.at_bracket_edge;
        detail += (detail.empty() ? "" : ", ") + fmt("%g", a0) + " -> " + fmt("%.5g", c.a0);
    }
    return {pass, detail};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "kinfront_acceptance_determinism";
    fs::remove_all(root);
    RunManifest m;
    m.spec = testing::smooth_spec();
    m.grid = Grid{64, 1e-3, 2.0};
    std::string text[2];
    for (int k = 0; k < 2; ++k) {
        const fs::path dir = root / std::to_string(k);
        emit_report(run(m.spec, m.grid, m.solver), dir, m);
        std::ifstream f(dir / "timeseries.csv", std::ios::binary);
        std::ostringstream os;
        os << f.rdbuf();
        text[k] = os.str();
    }
    fs::remove_all(root);
    return {!text[0].empty() && text[0] == text[1], std::to_string(text[0].size()) + " bytes compared"};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, "trivial steady state", trivial_state);

    std::vector<SolveReport> upwind;
    try {
        upwind = random_upwind_runs();
    } catch (const std::exception& e) {
        std::printf("random upwind runs failed: %s\n", e.what());
    }
    report(2, "bound invariant", [&] { return upwind.size() == 20 ? bounds(upwind) : Outcome{false, "runs failed"}; });
    report(3, "front monotone below envelope",
           [&] { return upwind.size() == 20 ? monotone_front(upwind) : Outcome{false, "runs failed"}; });

    report(4, "mass balance rate", mass_rate);
    report(5, "scheme orders", orders);
    report(6, "Picard contraction", picard);
    report(7, "stationary residual", stationary);

    SolveReport base;
    bool have_base = false;
    try {
        base = growth_run(testing::growth_grid().dt);
        have_base = true;
    } catch (const std::exception& e) {
        std::printf("reference long run failed: %s\n", e.what());
    }
    report(8, "large-time growth", [&] { return have_base ? growth(base) : Outcome{false, "run failed"}; });
    report(9, "energy bounded", [&] { return have_base ? energy(base) : Outcome{false, "run failed"}; });

    report(10, "calibration round trip", calibration);
    report(11, "determinism", determinism);

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "kinfront/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "kinfront/output.hpp"
#include "kinfront/solver.hpp"

namespace kinfront {

std::vector<SweepValue> parse_sweep_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.substr(0, eq) != "a0") {
        throw std::invalid_argument("--param expects a0=<v1,v2,...>, got '" + text + "'");
    }
    std::vector<SweepValue> out;
    std::stringstream rest(text.substr(eq + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !(v > 0.0)) {
            throw std::invalid_argument("--param: '" + item + "' is not a positive number");
        }
        out.push_back({item, v});
    }
    if (out.empty()) throw std::invalid_argument("--param lists no values");
    return out;
}

std::vector<Observation> read_observations(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open observations file '" + path + "'");
    std::vector<Observation> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        Observation o{};
        if (!(is >> o.t >> o.s)) {
            if (line_no == 1) continue;
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 't,s'");
        }
        out.push_back(o);
    }
    if (out.empty()) throw std::runtime_error("observations file '" + path + "' holds no samples");
    return out;
}

GrowthSummary summarize_growth(const SolveReport& report, const RunManifest& manifest) {
    GrowthSummary g;
    const double s0 = report.spec.s0;
    g.growth_ratio = report.fronts.back() / s0;
    g.final_speed = report.front_speeds.back();
    g.no_drive = report.spec.b.max_value() == 0.0;
    if (g.no_drive) return g;

    const double t_end = report.times.back();
    const double lo = manifest.fit_t_lo > 0.0 ? manifest.fit_t_lo : 0.5 * t_end;
    const double hi = manifest.fit_t_hi > 0.0 ? manifest.fit_t_hi : t_end;
    g.fit = fit_power_law(report, lo, hi, manifest.fit_subtract_s0);
    g.pass = report.fronts.back() > 3.0 * s0 && g.final_speed > 0.0;
    return g;
}

namespace {

std::filesystem::path out_dir(const RunManifest& m) { return m.output_dir; }

int do_run(const RunManifest& m, std::ostream& out) {
    const SolveReport report = run(m.spec, m.grid, m.solver, m.output_stride);
    emit_report(report, out_dir(m), m);
    out << "s(T) = " << format_real(report.fronts.back()) << "\n"
        << "rows = " << report.size() << "\n"
        << "output = " << (out_dir(m) / "timeseries.csv").string() << "\n";
    return exit_ok;
}

int do_sweep(const RunManifest& m, const CommandOptions& opt, std::ostream& out) {
    if (opt.sweep.empty()) throw std::invalid_argument("sweep needs --param a0=<v1,v2,...>");
    const std::size_t n = opt.sweep.size();
    std::vector<SolveReport> reports(n);
    std::vector<std::exception_ptr> errors(n);

    unsigned workers = opt.jobs != 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                ProblemSpec spec = m.spec;
                spec.a0 = opt.sweep[i].value;
                reports[i] = run(spec, m.grid, m.solver, m.output_stride);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::filesystem::create_directories(out_dir(m));
    std::ofstream summary(out_dir(m) / "sweep_summary.csv", std::ios::binary);
    if (!summary) throw std::runtime_error("cannot write sweep_summary.csv");
    summary << "a0,s_end,s_t_end\n";
    std::vector<std::string> labels;
    std::vector<const SolveReport*> ptrs;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string name = "a0=" + opt.sweep[i].label;
        emit_report(reports[i], out_dir(m) / name, m);
        summary << format_real(opt.sweep[i].value) << ',' << format_real(reports[i].fronts.back()) << ','
                << format_real(reports[i].front_speeds.back()) << '\n';
        out << name << ": s(T) = " << format_real(reports[i].fronts.back()) << "\n";
        labels.push_back(name);
        ptrs.push_back(&reports[i]);
    }
    // Reported only; ordering in a0 is observed, not guaranteed.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return opt.sweep[a].value < opt.sweep[b].value; });
    bool ordered = true;
    for (std::size_t k = 1; k < n; ++k) {
        const SolveReport& lo = reports[order[k - 1]];
        const SolveReport& hi = reports[order[k]];
        for (std::size_t r = 0; r < std::min(lo.size(), hi.size()); ++r) ordered = ordered && hi.fronts[r] >= lo.fronts[r];
    }
    out << "fronts ordered by a0 at every output time: " << (ordered ? "yes" : "no") << "\n";
    if (m.plot) {
        std::ofstream svg(out_dir(m) / "front.svg", std::ios::binary);
        write_front_svg(ptrs, labels, svg);
    }
    return exit_ok;
}

int do_converge(const RunManifest& m, std::ostream& out) {
    const ConvergenceOrders orders = richardson_orders(m.spec, m.grid, m.solver);
    std::filesystem::create_directories(out_dir(m));
    std::ofstream f(out_dir(m) / "convergence.txt", std::ios::binary);
    std::ostringstream os;
    os << "temporal_order = " << format_real(orders.temporal) << "\n"
       << "spatial_order = " << format_real(orders.spatial) << "\n";
    for (std::size_t i = 0; i < orders.temporal_values.size(); ++i) {
        os << "temporal_s_end[" << i << "] = " << format_real(orders.temporal_values[i]) << "\n";
    }
    for (std::size_t i = 0; i < orders.spatial_values.size(); ++i) {
        os << "spatial_s_end[" << i << "] = " << format_real(orders.spatial_values[i]) << "\n";
    }
    f << os.str();
    out << os.str();
    return exit_ok;
}

int do_growth(const RunManifest& m, std::ostream& out) {
    const SolveReport report = run(m.spec, m.grid, m.solver, m.output_stride);
    const GrowthSummary g = summarize_growth(report, m);

    std::ostringstream os;
    os << "s(T)/s0 = " << format_real(g.growth_ratio) << "\n"
       << "s_t(T) = " << format_real(g.final_speed) << "\n";
    if (g.no_drive) {
        os << "FAIL (no drive)\n";
    } else {
        os << "beta_hat = " << format_real(g.fit.exponent) << "\n"
           << "c_hat = " << format_real(g.fit.prefactor) << "\n"
           << "r2 = " << format_real(g.fit.r_squared) << "\n"
           << "window = [" << format_real(g.fit.t_lo) << ", " << format_real(g.fit.t_hi) << "]\n"
           << (g.pass ? "PASS" : "FAIL") << "\n";
    }
    std::vector<std::string> notes;
    std::istringstream lines(os.str());
    for (std::string l; std::getline(lines, l);) notes.push_back("growth: " + l);
    emit_report(report, out_dir(m), m, notes);
    out << os.str();
    return g.pass ? exit_ok : exit_check_failed;
}

int do_calibrate(const RunManifest& m, const CommandOptions& opt, std::ostream& out) {
    if (opt.observed_path.empty()) throw std::invalid_argument("calibrate needs --observed <csv>");
    const std::vector<Observation> obs = read_observations(opt.observed_path);
    const CalibrationResult c =
        calibrate_a0(m.spec, m.grid, m.solver, obs, m.calibrate_a0_lo, m.calibrate_a0_hi, m.calibrate_rel_tol);
    std::ostringstream os;
    os << "a0_hat = " << format_real(c.a0) << "\n"
       << "sse = " << format_real(c.sse) << "\n"
       << "evaluations = " << c.evaluations << "\n"
       << "at_bracket_edge = " << (c.at_bracket_edge ? "true" : "false") << "\n";
    if (c.at_bracket_edge) os << "warning: minimiser on the bracket edge; widen or shift the bracket\n";
    std::filesystem::create_directories(out_dir(m));
    std::ofstream f(out_dir(m) / "calibration.txt", std::ios::binary);
    f << os.str();
    out << os.str();
    return exit_ok;
}

int do_check(const RunManifest& m, std::ostream& out) {
    const SolveReport report = run(m.spec, m.grid, m.solver, m.output_stride);
    const InvariantSummary& inv = report.invariants;
    bool ok = true;
    std::vector<std::string> lines;
    auto verdict = [&](bool pass, const std::string& name, const std::string& detail) {
        ok = ok && pass;
        lines.push_back(std::string(pass ? "PASS " : "FAIL ") + name + ": " + detail);
    };

    verdict(inv.front_monotone, "front monotone", inv.front_monotone ? "s^{n+1} >= s^n" : "front receded");
    verdict(inv.worst_growth_excess <= 1e-12, "growth envelope",
            "max s - (s0 + a0 b^*/gamma t) = " + format_real(inv.worst_growth_excess));
    if (m.solver.advection == AdvectionScheme::upwind) {
        verdict(inv.bound_violations == 0, "bounds [0, b^*/gamma]",
                std::to_string(inv.bound_violations) + " violations");
    } else {
        lines.push_back("INFO bounds [0, b^*/gamma]: " + std::to_string(inv.bound_violations) +
                        " violations (central advection, not enforced)");
    }
    const bool finite_energy = std::all_of(report.energies.begin(), report.energies.end(),
                                           [](double e) { return std::isfinite(e); });
    const std::string energy_detail = finite_energy ? "psi finite at every recorded step" : "psi left its domain";
    if (m.solver.advection == AdvectionScheme::upwind) {
        verdict(finite_energy, "energy finite", energy_detail);
    } else {
        lines.push_back("INFO energy finite: " + energy_detail);
    }
    if (m.spec.b_infinity) {
        const StationaryResidual r = stationary_residual(m.spec);
        verdict(r.value > 0.0 && r.admissible, "no bounded steady state",
                "stationary residual = " + format_real(r.value));
    }

    emit_report(report, out_dir(m), m, lines);
    for (const auto& l : lines) out << l << "\n";
    return ok ? exit_ok : exit_check_failed;
}

}  // namespace

int execute(const RunManifest& manifest, const CommandOptions& options, std::ostream& out, std::ostream& err) {
    for (const auto& w : manifest.warnings) err << "warning: " << w << "\n";
    try {
        switch (manifest.command) {
            case Command::run: return do_run(manifest, out);
            case Command::sweep: return do_sweep(manifest, options, out);
            case Command::converge: return do_converge(manifest, out);
            case Command::growth: return do_growth(manifest, out);
            case Command::calibrate: return do_calibrate(manifest, options, out);
            case Command::check: return do_check(manifest, out);
        }
    } catch (const StepRejected& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_solver_failure;
    } catch (const NotAsymptotic& e) {
        err << "convergence study failed: " << e.what() << "\n";
        return exit_solver_failure;
    } catch (const NotUnimodal& e) {
        err << "calibration failed: " << e.what() << "\n";
        return exit_solver_failure;
    } catch (const InvalidWindow& e) {
        err << "power-law fit failed: " << e.what() << "\n";
        return exit_solver_failure;
    } catch (const std::invalid_argument& e) {
        err << "invalid arguments: " << e.what() << "\n";
        return exit_invalid_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_solver_failure;
    }
    return exit_ok;
}

}  // namespace kinfront

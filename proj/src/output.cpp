#include "kinfront/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kinfront {

void write_timeseries_csv(const SolveReport& r, std::ostream& out) {
    out << kTimeseriesHeader << '\n';
    for (std::size_t i = 0; i < r.size(); ++i) {
        out << format_real(r.times[i]) << ',' << format_real(r.fronts[i]) << ',' << format_real(r.front_speeds[i])
            << ',' << format_real(r.u_at_0[i]) << ',' << format_real(r.u_at_1[i]) << ','
            << format_real(r.masses[i]) << ',' << format_real(r.mass_residuals[i]) << ','
            << format_real(r.energies[i]) << '\n';
    }
}

void write_front_svg(std::span<const SolveReport* const> reports, std::span<const std::string> labels,
                     std::ostream& out) {
    constexpr double width = 640.0;
    constexpr double height = 420.0;
    constexpr double margin = 50.0;
    static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    double t_max = 0.0;
    double s_max = 0.0;
    for (const SolveReport* r : reports) {
        t_max = std::max(t_max, r->times.back());
        s_max = std::max(s_max, *std::max_element(r->fronts.begin(), r->fronts.end()));
    }
    if (t_max <= 0.0) t_max = 1.0;
    if (s_max <= 0.0) s_max = 1.0;
    auto px = [&](double t) { return margin + (width - 2 * margin) * t / t_max; };
    auto py = [&](double s) { return height - margin - (height - 2 * margin) * s / s_max; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">t (max "
        << format_real(t_max) << ")</text>\n"
        << "<text x=\"14\" y=\"" << height / 2 << "\" transform=\"rotate(-90 14 " << height / 2
        << ")\" text-anchor=\"middle\">s (max " << format_real(s_max) << ")</text>\n";

    for (std::size_t k = 0; k < reports.size(); ++k) {
        const SolveReport& r = *reports[k];
        const char* color = colors[k % std::size(colors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        // Thin to at most ~2000 vertices.
        const std::size_t stride = std::max<std::size_t>(1, r.size() / 2000);
        for (std::size_t i = 0; i < r.size(); i += stride) out << px(r.times[i]) << ',' << py(r.fronts[i]) << ' ';
        out << px(r.times.back()) << ',' << py(r.fronts.back()) << "\"/>\n";
        if (k < labels.size()) {
            out << "<text x=\"" << margin + 10 << "\" y=\"" << margin + 16.0 * static_cast<double>(k + 1)
                << "\" fill=\"" << color << "\">" << labels[k] << "</text>\n";
        }
    }
    out << "</svg>\n";
}

std::string invariant_summary(const SolveReport& r) {
    const InvariantSummary& inv = r.invariants;
    std::ostringstream os;
    os << "steps: " << inv.steps << "\n"
       << "rows: " << r.size() << "\n"
       << "front_monotone: " << (inv.front_monotone ? "yes" : "no") << "\n"
       << "worst_growth_excess: " << format_real(inv.worst_growth_excess) << "\n"
       << "bound_violations: " << inv.bound_violations << "\n"
       << "worst_bound_excess: " << format_real(inv.worst_bound_excess) << "\n"
       << "picard_iters_total: " << inv.picard_iters_total << "\n"
       << "picard_iters_max: " << inv.picard_iters_max << "\n"
       << "picard_ratio_max: " << format_real(inv.picard_ratio_max) << "\n"
       << "s_final: " << format_real(r.fronts.back()) << "\n";
    return os.str();
}

void emit_report(const SolveReport& report, const std::filesystem::path& dir, const RunManifest& manifest,
                 const std::vector<std::string>& notes) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
        return f;
    };

    {
        std::ofstream csv = open("timeseries.csv");
        write_timeseries_csv(report, csv);
        if (!csv) throw std::runtime_error("write failed for timeseries.csv");
    }
    {
        RunManifest echo = manifest;
        echo.spec = report.spec;
        echo.grid = report.grid;
        echo.solver = report.config;
        echo.output_stride = report.output_stride;

        std::ofstream meta = open("meta.txt");
        meta << "# command: " << to_string(manifest.command) << "\n"
             << render_config(echo) << "\n# invariants\n"
             << invariant_summary(report) << "wall_seconds: " << report.wall_seconds << "\n";
        for (const auto& w : manifest.warnings) meta << "warning: " << w << "\n";
        for (const auto& n : notes) meta << n << "\n";
    }
    if (manifest.plot) {
        std::ofstream svg = open("front.svg");
        const SolveReport* one[] = {&report};
        write_front_svg(one, {}, svg);
    }
}

}  // namespace kinfront

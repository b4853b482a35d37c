#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kinfront/config.hpp"
#include "kinfront/report.hpp"

namespace kinfront {

inline constexpr const char* kTimeseriesHeader = "t,s,s_t,u0,uS,mass,mass_residual,psi";

/// One CSV row per recorded step, 17 significant digits per value.
void write_timeseries_csv(const SolveReport& report, std::ostream& out);

/// Single line chart of s against t.
void write_front_svg(std::span<const SolveReport* const> reports, std::span<const std::string> labels,
                     std::ostream& out);

/// Human-readable invariant summary (one `name: value` per line).
std::string invariant_summary(const SolveReport& report);

/// Writes timeseries.csv, meta.txt and (if manifest.plot) front.svg into
/// `dir`, creating it when needed. `notes` are appended to meta.txt.
/// Throws std::runtime_error when the directory cannot be written.
void emit_report(const SolveReport& report, const std::filesystem::path& dir, const RunManifest& manifest,
                 const std::vector<std::string>& notes = {});

}  // namespace kinfront

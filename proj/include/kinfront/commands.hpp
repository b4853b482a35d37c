#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kinfront/config.hpp"
#include "kinfront/diagnostics.hpp"
#include "kinfront/report.hpp"

namespace kinfront {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_config = 1,
    exit_solver_failure = 2,
    exit_check_failed = 3,
};

/// One sweep point; `label` is the value text exactly as given on the
/// command line and names the output subdirectory `a0=<label>`.
struct SweepValue {
    std::string label;
    double value;
};

/// Parses "a0=v1,v2,...". Throws std::invalid_argument on anything else.
std::vector<SweepValue> parse_sweep_param(const std::string& text);

/// Reads (t, s) pairs from a CSV file; a non-numeric first line is taken as a header.
std::vector<Observation> read_observations(const std::string& path);

struct CommandOptions {
    std::vector<SweepValue> sweep;
    std::string observed_path;
    unsigned jobs = 0;  ///< sweep workers; 0 picks the hardware concurrency
};

struct GrowthSummary {
    double growth_ratio = 0.0;  ///< s(T)/s0
    double final_speed = 0.0;
    bool no_drive = false;
    bool pass = false;
    PowerLawFit fit;
};

/// Thresholds: s(T) > 3*s0 and a positive front speed at T. The tail fit is
/// reported alongside; it is skipped (and the run fails) when there is no drive.
GrowthSummary summarize_growth(const SolveReport& report, const RunManifest& manifest);

/// Runs `manifest.command`, writing files below manifest.output_dir and a
/// short summary to `out`. Returns an ExitCode.
int execute(const RunManifest& manifest, const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace kinfront

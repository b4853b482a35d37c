#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kinfront/grid.hpp"
#include "kinfront/model.hpp"
#include "kinfront/solver_config.hpp"

namespace kinfront {

enum class Command { run, sweep, converge, growth, calibrate, check };

std::string to_string(Command c);
/// Throws std::invalid_argument for an unknown name.
Command parse_command(std::string_view name);

/// Everything a CLI invocation needs to reproduce a run.
struct RunManifest {
    Command command = Command::run;
    ProblemSpec spec;
    Grid grid;
    SolverConfig solver;
    std::string output_dir = "out";
    std::size_t output_stride = 1;
    bool plot = false;

    // Tail window of the power-law fit; nonpositive means the default [T/2, T].
    double fit_t_lo = 0.0;
    double fit_t_hi = 0.0;
    bool fit_subtract_s0 = false;

    double calibrate_a0_lo = 1e-3;
    double calibrate_a0_hi = 1e2;
    double calibrate_rel_tol = 1e-3;

    /// Non-fatal remarks, e.g. the degenerate zero-drive case.
    std::vector<std::string> warnings;
};

/// Parse failure; every problem found is listed, one per entry.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Parses the flat `key = value` format ('#' starts a comment). Structural
/// problems are reported with line numbers; admissibility violations are
/// reported with the assumption they break. A spec with b identically zero
/// and b_upper = 0 is accepted as the degenerate no-drive case, with a warning.
RunManifest parse_config(std::string_view text);

RunManifest load_config(const std::string& path);

/// Canonical `key = value` rendering of a manifest, readable by parse_config.
std::string render_config(const RunManifest& manifest);

/// Formats a double with 17 significant digits.
std::string format_real(double v);

}  // namespace kinfront

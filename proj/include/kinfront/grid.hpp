#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kinfront/model.hpp"

namespace kinfront {

/// Uniform grid on the fixed domain [0, 1] plus time-step control.
struct Grid {
    std::size_t n_cells = 64;
    double dt = 1e-3;
    double t_end = 1.0;

    std::size_t n_nodes() const noexcept { return n_cells + 1; }
    double h() const noexcept { return 1.0 / static_cast<double>(n_cells); }
    double node(std::size_t i) const noexcept {
        return static_cast<double>(i) / static_cast<double>(n_cells);
    }
    /// Number of steps to reach t_end; the final step is shortened when
    /// t_end is not a multiple of dt.
    std::size_t n_steps() const;
    /// Time level of step n, computed without accumulation.
    double time_at(std::size_t n) const;

    /// Throws std::invalid_argument when n_cells < 4, dt <= 0 or t_end < dt.
    void validate() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Front position and nodal values on the fixed domain at one time level.
struct TransformedState {
    double t = 0.0;
    double s = 1.0;
    std::vector<double> u_tilde;
};

/// Concentration on the moving domain [0, s].
struct PhysicalField {
    double s = 1.0;
    std::vector<double> z_nodes;
    std::vector<double> u;
};

/// Maps a physical field onto `n_cells` uniform cells of [0, 1]. When the
/// field already lives on the image nodes y_i*s the values are copied
/// verbatim; otherwise they are linearly interpolated in z.
std::vector<double> landau_forward(const PhysicalField& field, std::size_t n_cells);

/// Relabels the nodal values of `state` onto z_i = y_i*s.
PhysicalField landau_inverse(const TransformedState& state);

/// Trapezoidal approximation of the integral of u over [0, s].
double trapezoid_mass(const PhysicalField& field);

/// trapezoid_mass of the inverse image of `state`.
double physical_mass(const TransformedState& state);

/// Samples u0 on the image of the grid at s0 and maps it to the fixed domain.
TransformedState initial_state(const ProblemSpec& spec, std::size_t n_cells);

double psi_energy(const TransformedState& state, const ProblemSpec& spec);

}  // namespace kinfront

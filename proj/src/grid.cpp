#include "kinfront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinfront {

std::size_t Grid::n_steps() const {
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

double Grid::time_at(std::size_t n) const {
    const std::size_t total = n_steps();
    if (n >= total) return t_end;
    return static_cast<double>(n) * dt;
}

void Grid::validate() const {
    if (n_cells < 4) throw std::invalid_argument("grid needs at least 4 cells");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
    if (!(t_end >= dt) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be at least dt");
}

namespace {

bool on_image_nodes(const PhysicalField& field, std::size_t n_cells) {
    if (field.z_nodes.size() != n_cells + 1) return false;
    for (std::size_t i = 0; i <= n_cells; ++i) {
        const double y = static_cast<double>(i) / static_cast<double>(n_cells);
        if (field.z_nodes[i] != y * field.s) return false;
    }
    return true;
}

}  // namespace

std::vector<double> landau_forward(const PhysicalField& field, std::size_t n_cells) {
    if (!(field.s > 0.0)) throw std::invalid_argument("landau_forward: front position must be positive");
    if (field.z_nodes.size() != field.u.size() || field.u.empty()) {
        throw std::invalid_argument("landau_forward: z_nodes and u must be nonempty and equal-sized");
    }
    if (on_image_nodes(field, n_cells)) return field.u;

    std::vector<Knot> knots;
    knots.reserve(field.u.size());
    for (std::size_t k = 0; k < field.u.size(); ++k) knots.push_back({field.z_nodes[k], field.u[k]});
    const PiecewiseLinear interp(std::move(knots));

    std::vector<double> out(n_cells + 1);
    for (std::size_t i = 0; i <= n_cells; ++i) {
        const double y = static_cast<double>(i) / static_cast<double>(n_cells);
        out[i] = interp(y * field.s);
    }
    return out;
}

PhysicalField landau_inverse(const TransformedState& state) {
    if (!(state.s > 0.0)) throw std::invalid_argument("landau_inverse: front position must be positive");
    const std::size_t n = state.u_tilde.size() - 1;
    PhysicalField field;
    field.s = state.s;
    field.u = state.u_tilde;
    field.z_nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        field.z_nodes[i] = static_cast<double>(i) / static_cast<double>(n) * state.s;
    }
    return field;
}

double trapezoid_mass(const PhysicalField& field) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < field.u.size(); ++i) {
        m += 0.5 * (field.u[i] + field.u[i + 1]) * (field.z_nodes[i + 1] - field.z_nodes[i]);
    }
    return m;
}

double physical_mass(const TransformedState& state) {
    return trapezoid_mass(landau_inverse(state));
}

TransformedState initial_state(const ProblemSpec& spec, std::size_t n_cells) {
    PhysicalField field;
    field.s = spec.s0;
    field.z_nodes.resize(n_cells + 1);
    field.u.resize(n_cells + 1);
    for (std::size_t i = 0; i <= n_cells; ++i) {
        field.z_nodes[i] = static_cast<double>(i) / static_cast<double>(n_cells) * spec.s0;
        field.u[i] = spec.u0(field.z_nodes[i]);
    }
    return TransformedState{0.0, spec.s0, landau_forward(field, n_cells)};
}

double psi_energy(const TransformedState& state, const ProblemSpec& spec) {
    return psi_energy(state.u_tilde, state.s, spec, state.t);
}

}  // namespace kinfront

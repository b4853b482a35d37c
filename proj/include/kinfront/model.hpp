#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kinfront {

/// Positive-part cut-off: r for r >= 0, zero otherwise.
constexpr double sigma(double r) noexcept { return r >= 0.0 ? r : 0.0; }

/// A knot of a piecewise-linear table: (abscissa, value).
struct Knot {
    double x;
    double value;
};

/// Piecewise-linear interpolant over strictly increasing abscissae. Outside
/// the knot range the nearest endpoint value is returned.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<Knot> knots);

    double operator()(double x) const;

    std::span<const Knot> knots() const noexcept { return knots_; }
    double min_value() const;
    double max_value() const;

private:
    std::vector<Knot> knots_;
};

/// Threshold function b(t) driving the Robin flux at the fixed boundary.
class BoundaryDriver {
public:
    enum class Kind { constant, table };

    static BoundaryDriver constant(double value);
    /// Throws std::invalid_argument unless times are strictly increasing.
    static BoundaryDriver table(std::vector<Knot> knots);

    double operator()(double t) const;

    Kind kind() const noexcept { return kind_; }
    double min_value() const;
    double max_value() const;
    std::span<const Knot> knots() const noexcept { return table_.knots(); }

private:
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    PiecewiseLinear table_;
};

/// Initial concentration u0(z) on [0, s0].
class InitialProfile {
public:
    enum class Kind { constant, table };

    static InitialProfile constant(double value);
    static InitialProfile table(std::vector<Knot> knots);

    double operator()(double z) const;

    Kind kind() const noexcept { return kind_; }
    double min_value() const;
    double max_value() const;
    std::span<const Knot> knots() const noexcept { return table_.knots(); }

private:
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    PiecewiseLinear table_;
};

/// Model parameters and input functions of the kinetic free-boundary problem.
struct ProblemSpec {
    double a0 = 1.0;     ///< kinetic rate coefficient
    double beta = 1.0;   ///< Robin transfer coefficient
    double gamma = 1.0;  ///< partition coefficient
    double s0 = 1.0;     ///< initial front position
    BoundaryDriver b = BoundaryDriver::constant(1.0);
    InitialProfile u0 = InitialProfile::constant(0.0);
    double b_lower = 1.0;
    double b_upper = 1.0;
    std::optional<double> b_infinity;

    /// Upper bound b^*/gamma of every admissible concentration.
    double u_max() const noexcept { return b_upper / gamma; }
};

double eval_b(const ProblemSpec& spec, double t);

enum class Assumption { A1, A2, A3, A2_infinity };

std::string to_string(Assumption a);

struct Violation {
    Assumption assumption;
    std::string message;
};

/// Lists every broken admissibility assumption; empty iff the spec is admissible.
std::vector<Violation> admissibility_check(const ProblemSpec& spec);

/// Energy functional psi^t evaluated on nodal values `u_tilde` over a uniform
/// grid of [0, 1] at front position `s`. Returns +infinity when any nodal
/// value is negative.
double psi_energy(std::span<const double> u_tilde, double s, const ProblemSpec& spec, double t);

}  // namespace kinfront

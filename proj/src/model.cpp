#include "kinfront/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kinfront {

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) {
        throw std::invalid_argument("piecewise-linear table needs at least one knot");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i].x) || !std::isfinite(knots_[i].value)) {
            throw std::invalid_argument("piecewise-linear table contains a non-finite entry");
        }
        if (i > 0 && !(knots_[i].x > knots_[i - 1].x)) {
            throw std::invalid_argument("piecewise-linear table abscissae must be strictly increasing");
        }
    }
}

double PiecewiseLinear::operator()(double x) const {
    if (x <= knots_.front().x) return knots_.front().value;
    if (x >= knots_.back().x) return knots_.back().value;
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const Knot& k) { return v < k.x; });
    auto lo = hi - 1;
    const double w = (x - lo->x) / (hi->x - lo->x);
    return lo->value + w * (hi->value - lo->value);
}

double PiecewiseLinear::min_value() const {
    return std::min_element(knots_.begin(), knots_.end(),
                            [](const Knot& a, const Knot& b) { return a.value < b.value; })
        ->value;
}

double PiecewiseLinear::max_value() const {
    return std::max_element(knots_.begin(), knots_.end(),
                            [](const Knot& a, const Knot& b) { return a.value < b.value; })
        ->value;
}

BoundaryDriver BoundaryDriver::constant(double value) {
    BoundaryDriver d;
    d.kind_ = Kind::constant;
    d.value_ = value;
    return d;
}

BoundaryDriver BoundaryDriver::table(std::vector<Knot> knots) {
    BoundaryDriver d;
    d.kind_ = Kind::table;
    d.table_ = PiecewiseLinear(std::move(knots));
    return d;
}

double BoundaryDriver::operator()(double t) const {
    return kind_ == Kind::constant ? value_ : table_(t);
}

double BoundaryDriver::min_value() const {
    return kind_ == Kind::constant ? value_ : table_.min_value();
}

double BoundaryDriver::max_value() const {
    return kind_ == Kind::constant ? value_ : table_.max_value();
}

InitialProfile InitialProfile::constant(double value) {
    InitialProfile p;
    p.kind_ = Kind::constant;
    p.value_ = value;
    return p;
}

InitialProfile InitialProfile::table(std::vector<Knot> knots) {
    InitialProfile p;
    p.kind_ = Kind::table;
    p.table_ = PiecewiseLinear(std::move(knots));
    return p;
}

double InitialProfile::operator()(double z) const {
    return kind_ == Kind::constant ? value_ : table_(z);
}

double InitialProfile::min_value() const {
    return kind_ == Kind::constant ? value_ : table_.min_value();
}

double InitialProfile::max_value() const {
    return kind_ == Kind::constant ? value_ : table_.max_value();
}

double eval_b(const ProblemSpec& spec, double t) { return spec.b(t); }

std::string to_string(Assumption a) {
    switch (a) {
        case Assumption::A1: return "(A1)";
        case Assumption::A2: return "(A2)";
        case Assumption::A3: return "(A3)";
        case Assumption::A2_infinity: return "(A2)'";
    }
    return "(?)";
}

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string describe(const char* what, double v) {
    std::ostringstream os;
    os << what << " = " << v;
    return os.str();
}

}  // namespace

std::vector<Violation> admissibility_check(const ProblemSpec& spec) {
    std::vector<Violation> out;
    auto add = [&](Assumption a, std::string msg) { out.push_back({a, std::move(msg)}); };

    if (!positive(spec.a0)) add(Assumption::A1, describe("a0 must be positive, got a0", spec.a0));
    if (!positive(spec.beta)) add(Assumption::A1, describe("beta must be positive, got beta", spec.beta));
    if (!positive(spec.gamma)) add(Assumption::A1, describe("gamma must be positive, got gamma", spec.gamma));

    if (!positive(spec.b_lower)) add(Assumption::A2, describe("b_lower must be positive, got b_lower", spec.b_lower));
    if (!(spec.b_lower <= spec.b_upper)) {
        add(Assumption::A2, "b_lower must not exceed b_upper");
    }
    if (spec.b.min_value() < spec.b_lower || spec.b.max_value() > spec.b_upper) {
        std::ostringstream os;
        os << "b(t) leaves [b_lower, b_upper]: range [" << spec.b.min_value() << ", "
           << spec.b.max_value() << "] vs [" << spec.b_lower << ", " << spec.b_upper << "]";
        add(Assumption::A2, os.str());
    }

    if (!positive(spec.s0)) add(Assumption::A3, describe("s0 must be positive, got s0", spec.s0));
    if (spec.u0.kind() == InitialProfile::Kind::table) {
        for (const Knot& k : spec.u0.knots()) {
            if (k.x < 0.0 || k.x > spec.s0) {
                add(Assumption::A3, describe("u0 table position outside [0, s0]: z", k.x));
                break;
            }
        }
    }
    if (positive(spec.gamma)) {
        const double cap = spec.u_max();
        if (spec.u0.min_value() < 0.0 || spec.u0.max_value() > cap) {
            std::ostringstream os;
            os << "u0 leaves [0, b_upper/gamma]: range [" << spec.u0.min_value() << ", "
               << spec.u0.max_value() << "] vs [0, " << cap << "]";
            add(Assumption::A3, os.str());
        }
    }

    if (spec.b_infinity) {
        const double binf = *spec.b_infinity;
        if (!(binf >= spec.b_lower && binf <= spec.b_upper) || !positive(binf)) {
            add(Assumption::A2_infinity, describe("b_infinity outside [b_lower, b_upper]: b_infinity", binf));
        }
    }
    return out;
}

double psi_energy(std::span<const double> u_tilde, double s, const ProblemSpec& spec, double t) {
    if (std::any_of(u_tilde.begin(), u_tilde.end(), [](double v) { return v < 0.0; })) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t n = u_tilde.size() - 1;
    const double h = 1.0 / static_cast<double>(n);

    // u_y is constant per cell, so the trapezoidal rule is exact cell by cell.
    double grad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (u_tilde[i + 1] - u_tilde[i]) / h;
        grad += d * d * h;
    }

    const double c1 = u_tilde[n];
    const double c0 = u_tilde[0];
    const double front = spec.a0 * c1 * c1 * c1 / 3.0;
    const double robin = spec.beta * (eval_b(spec, t) * c0 - 0.5 * spec.gamma * c0 * c0);
    return grad / (2.0 * s * s) + (front - robin) / s;
}

}  // namespace kinfront

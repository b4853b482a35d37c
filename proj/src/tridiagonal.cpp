#include "kinfront/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace kinfront {

std::size_t TridiagonalSystem::first_non_dominant_row() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
        if (!(std::abs(diag[i]) >= off)) return i;
    }
    return n;
}

double TridiagonalSystem::residual(std::span<const double> x) const {
    const std::size_t n = size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = diag[i] * x[i];
        if (i > 0) ax += lower[i] * x[i - 1];
        if (i + 1 < n) ax += upper[i] * x[i + 1];
        worst = std::max(worst, std::abs(ax - rhs[i]));
    }
    return worst;
}

std::vector<double> solve_thomas(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<double> c(n, 0.0);
    std::vector<double> x(n, 0.0);

    double pivot = sys.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SolveBreakdown("tridiagonal solve: zero or non-finite pivot at row " + std::to_string(i));
        }
        c[i] = (i + 1 < n) ? sys.upper[i] / pivot : 0.0;
        x[i] = (sys.rhs[i] - (i > 0 ? sys.lower[i] * x[i - 1] : 0.0)) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

}  // namespace kinfront

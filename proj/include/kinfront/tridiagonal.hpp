#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinfront {

/// Tridiagonal system: lower[i] couples row i to i-1 (lower[0] unused),
/// upper[i] couples row i to i+1 (upper[n-1] unused).
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}
    std::size_t size() const noexcept { return diag.size(); }

    /// First row that is not weakly diagonally dominant, or size() if none.
    std::size_t first_non_dominant_row() const;
    /// Max-norm of A*x - rhs.
    double residual(std::span<const double> x) const;
};

class SolveBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thomas algorithm. Throws SolveBreakdown on a zero or non-finite pivot.
std::vector<double> solve_thomas(const TridiagonalSystem& sys);

}  // namespace kinfront

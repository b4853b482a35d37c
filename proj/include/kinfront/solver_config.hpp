#pragma once

#include <cstddef>
#include <optional>

namespace kinfront {

enum class AdvectionScheme { central, upwind };

struct PicardOptions {
    std::size_t max_iters = 20;
    double tol = 1e-12;
};

struct SolverConfig {
    AdvectionScheme advection = AdvectionScheme::central;
    std::optional<PicardOptions> picard;
    double bounds_tol = 1e-10;

    void validate() const;
};

}  // namespace kinfront

#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "kinfront/model.hpp"
#include "reference_specs.hpp"

using namespace kinfront;

namespace {

// Midpoint quadrature of an integrand over [0, upper]; independent of the
// closed-form polynomials used by psi_energy.
template <class F>
double midpoint(F f, double upper, int n = 20000) {
    const double h = upper / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f((i + 0.5) * h);
    return sum * h;
}

double psi_by_quadrature(const std::vector<double>& u, double s, const ProblemSpec& spec, double t) {
    const std::size_t n = u.size() - 1;
    const double h = 1.0 / static_cast<double>(n);
    double grad = 0.0;
    for (std::size_t i = 0; i < n; ++i) grad += std::pow((u[i + 1] - u[i]) / h, 2) * h;
    const double front = midpoint([&](double xi) { return spec.a0 * xi * sigma(xi); }, u.back());
    const double robin = midpoint([&](double xi) { return spec.beta * (spec.b(t) - spec.gamma * xi); }, u.front());
    return grad / (2 * s * s) + front / s - robin / s;
}

ProblemSpec unit_spec() {
    ProblemSpec spec;
    spec.a0 = spec.beta = spec.gamma = spec.s0 = 1.0;
    spec.b = BoundaryDriver::constant(1.0);
    spec.b_lower = spec.b_upper = 1.0;
    spec.u0 = InitialProfile::constant(0.0);
    return spec;
}

}  // namespace

TEST_CASE("sigma") {
    CHECK(sigma(2.0) == 2.0);
    CHECK(sigma(-1.0) == 0.0);
    CHECK(sigma(0.0) == 0.0);

    // Exhaustive over a small lattice: nonnegative, equals r*[r >= 0], idempotent.
    for (int k = -1000; k <= 1000; ++k) {
        const double r = k * 0.01;
        CHECK(sigma(r) >= 0.0);
        CHECK(sigma(r) == (r >= 0.0 ? r : 0.0));
        CHECK(sigma(sigma(r)) == sigma(r));
    }
}

TEST_CASE("eval_b") {
    ProblemSpec spec = unit_spec();
    CHECK(eval_b(spec, 5.0) == 1.0);

    spec.b = BoundaryDriver::table({{0.0, 1.0}, {10.0, 2.0}});
    spec.b_upper = 2.0;
    CHECK(eval_b(spec, 5.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(eval_b(spec, 20.0) == 2.0);
    CHECK(eval_b(spec, 0.0) == 1.0);

    SUBCASE("stays within bounds for any t") {
        std::mt19937_64 rng(7);
        for (int k = 0; k < 50; ++k) {
            const ProblemSpec r = testing::random_spec(rng);
            std::uniform_real_distribution<double> t(0.0, 100.0);
            for (int j = 0; j < 200; ++j) {
                const double b = eval_b(r, t(rng));
                CHECK(b >= r.b_lower);
                CHECK(b <= r.b_upper);
            }
        }
    }

    SUBCASE("table times must increase strictly") {
        CHECK_THROWS_AS(BoundaryDriver::table({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
        CHECK_THROWS_AS(BoundaryDriver::table({{1.0, 1.0}, {0.5, 2.0}}), std::invalid_argument);
    }

    SUBCASE("out-of-bounds table is flagged as (A2)") {
        ProblemSpec bad = unit_spec();
        bad.b = BoundaryDriver::table({{0.0, 1.0}, {1.0, 3.0}});
        const auto v = admissibility_check(bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].assumption == Assumption::A2);
    }
}

TEST_CASE("psi_energy") {
    ProblemSpec spec = unit_spec();
    const std::vector<double> zero(33, 0.0);
    CHECK(psi_energy(zero, 1.0, spec, 0.0) == 0.0);

    const std::vector<double> ones(33, 1.0);
    CHECK(psi_energy(ones, 1.0, spec, 0.0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(psi_by_quadrature(ones, 1.0, spec, 0.0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-8));

    std::vector<double> negative = ones;
    negative[5] = -0.1;
    CHECK(std::isinf(psi_energy(negative, 1.0, spec, 0.0)));
    CHECK(psi_energy(negative, 1.0, spec, 0.0) > 0.0);

    SUBCASE("closed-form boundary terms agree with quadrature") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 20; ++k) {
            const ProblemSpec r = testing::random_spec(rng);
            std::vector<double> u(17);
            for (double& v : u) v = r.u_max() * unit(rng);
            const double s = r.s0 * (1.0 + unit(rng));
            const double t = 10.0 * unit(rng);
            CHECK(psi_energy(u, s, r, t) == doctest::Approx(psi_by_quadrature(u, s, r, t)).epsilon(1e-7));
        }
    }

    SUBCASE("convex along segments of constant states") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            const ProblemSpec r = testing::random_spec(rng);
            const double c1 = 3.0 * r.u_max() * unit(rng);
            const double c2 = 3.0 * r.u_max() * unit(rng);
            const double s = r.s0 * (1.0 + unit(rng));
            const std::vector<double> a(9, c1), b(9, c2), mid(9, 0.5 * (c1 + c2));
            const double lhs = psi_energy(mid, s, r, 1.0);
            const double rhs = 0.5 * (psi_energy(a, s, r, 1.0) + psi_energy(b, s, r, 1.0));
            CHECK(lhs <= rhs + 1e-12 * std::abs(rhs));
        }
    }

    SUBCASE("lower bound -(beta l / gamma)(b^*/s0)^2 with l = s") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            const ProblemSpec r = testing::random_spec(rng);
            std::vector<double> u(17);
            for (double& v : u) v = 2.0 * r.u_max() * unit(rng);
            const double s = r.s0 * (1.0 + 4.0 * unit(rng));
            const double bound = -(r.beta * s / r.gamma) * std::pow(r.b_upper / r.s0, 2);
            CHECK(psi_energy(u, s, r, 3.0 * unit(rng)) >= bound);
        }
    }
}

TEST_CASE("admissibility_check") {
    ProblemSpec spec = unit_spec();
    CHECK(admissibility_check(spec).empty());

    SUBCASE("gamma = 0 breaks (A1)") {
        spec.gamma = 0.0;
        const auto v = admissibility_check(spec);
        REQUIRE(v.size() == 1);
        CHECK(v[0].assumption == Assumption::A1);
        CHECK(to_string(v[0].assumption) == "(A1)");
    }

    SUBCASE("u0 above b^*/gamma breaks (A3)") {
        spec.u0 = InitialProfile::constant(2.0 * spec.b_upper / spec.gamma);
        const auto v = admissibility_check(spec);
        REQUIRE(v.size() == 1);
        CHECK(v[0].assumption == Assumption::A3);
    }

    SUBCASE("negative u0 breaks (A3)") {
        spec.u0 = InitialProfile::table({{0.0, 0.5}, {1.0, -0.1}});
        const auto v = admissibility_check(spec);
        REQUIRE(v.size() == 1);
        CHECK(v[0].assumption == Assumption::A3);
    }

    SUBCASE("b_lower above b_upper breaks (A2)") {
        spec.b_lower = 2.0;
        bool found = false;
        for (const auto& v : admissibility_check(spec)) found = found || v.assumption == Assumption::A2;
        CHECK(found);
    }

    SUBCASE("b_infinity outside the bounds breaks (A2)'") {
        spec.b_infinity = 5.0;
        const auto v = admissibility_check(spec);
        REQUIRE(v.size() == 1);
        CHECK(v[0].assumption == Assumption::A2_infinity);
    }

    SUBCASE("random specs are admissible") {
        std::mt19937_64 rng(1);
        for (int k = 0; k < 100; ++k) CHECK(admissibility_check(testing::random_spec(rng)).empty());
    }
}

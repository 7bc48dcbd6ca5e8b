#include "doctest.h"

#include <cmath>
#include <numbers>

#include "necklace/errors.hpp"
#include "necklace/profile.hpp"
#include "oracles.hpp"

using namespace necklace;

TEST_CASE("cylinder closed forms at a = 1/2") {
    const DelaunayProfile p = solve_profile(0.5);
    CHECK(p.T == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(p.V == doctest::Approx(std::numbers::pi * std::numbers::pi / 4).epsilon(1e-12));
    CHECK(compute_Ia(p) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-10));
    CHECK(compute_Ia_conformal(build_chart(0.5)) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-10));
}

TEST_CASE("period, volume and Ia agree with the first-integral quadrature") {
    for (double a : {0.01, 0.05, 0.2, 0.3, 0.45}) {
        CAPTURE(a);
        const DelaunayProfile p = solve_profile(a);
        const auto ref = oracle::delaunay_by_quadrature(a);
        CHECK(p.T == doctest::Approx(ref.T).epsilon(1e-9));
        CHECK(p.V == doctest::Approx(ref.V).epsilon(1e-9));
        CHECK(p.Ia == doctest::Approx(ref.Ia).epsilon(1e-8));
    }
}

TEST_CASE("profile invariants: bulge, neck and first integral") {
    // samples run from the bulge at s = 0 to the neck at s = T/2
    const DelaunayProfile p = solve_profile(0.3);
    CHECK(p.f.front() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(p.f.back() == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(conserved_residual(p) < 1e-10);
    CHECK(profile_curvature_residual(p) < 1e-8);
    CHECK(min_fstar(p) > 0.0);
}

TEST_CASE("isothermal chart is conformal and matches the axial profile") {
    const ConformalChart c = build_chart(0.3, kDefaultTol, 256);
    const DelaunayProfile p = solve_profile(0.3);
    CHECK(isothermal_residual(c) < 1e-9);
    CHECK(c.T == doctest::Approx(p.T).epsilon(1e-10));
    CHECK(c.x[c.N / 2] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(c.x[0] == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(compute_Ia_conformal(c) == doctest::Approx(p.Ia).epsilon(1e-8));
    // tau = -log a + log 4 + O(a |log a|) for small necks
    for (double a : {0.01, 0.001}) {
        const ConformalChart small = build_chart(a, kDefaultTol, 256);
        CHECK(std::abs(small.tau + std::log(a) - std::log(4.0)) < 10.0 * a * std::abs(std::log(a)));
    }
}

TEST_CASE("invalid neck sizes are rejected") {
    CHECK_THROWS_AS(solve_profile(0.0), DomainError);
    CHECK_THROWS_AS(solve_profile(0.6), DomainError);
    CHECK_THROWS_AS(build_chart(0.3, kDefaultTol, 7), DomainError);
}

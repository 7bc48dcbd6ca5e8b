#include "doctest.h"

#include <cmath>
#include <random>

#include "necklace/errors.hpp"
#include "necklace/jacobi.hpp"

using namespace necklace;

namespace {

double sup(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SymmetricField random_field(const JacobiSolver& s, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    SymmetricField E = s.zero();
    const double tau = s.chart().tau;
    for (int k = 0; k <= s.kmax(); ++k) {
        std::vector<double> v(s.N());
        const double c1 = U(rng), c2 = U(rng), c3 = U(rng);
        for (int j = 0; j < s.N(); ++j) {
            const double t = -tau + 2.0 * tau * j / s.N();
            v[j] = c1 + c2 * std::cos(std::numbers::pi * t / tau) + c3 * std::cos(3 * std::numbers::pi * t / tau);
        }
        E.set_mode(k, v);
    }
    return E;
}

}  // namespace

TEST_CASE("Jacobi fields lie in the kernel") {
    for (double a : {0.05, 0.3, 0.45}) {
        CAPTURE(a);
        const JacobiSolver s(build_chart(a, kDefaultTol, 512), 4);
        const auto w = s.nu12_profile();
        CHECK(sup(s.apply_mode(1, w)) < 1e-6 * sup(w) / (a * a));
        const auto n3 = s.nu3_profile();
        CHECK(sup(s.apply_mode(0, n3)) < 1e-6 * sup(n3) / (a * a));
    }
}

TEST_CASE("projected solve on random symmetric data") {
    for (int N : {64, 128}) {
        const JacobiSolver s(build_chart(0.3, kDefaultTol, N), 6);
        const SymmetricField E = random_field(s, 7);
        const ProjectedSolution sol = solve_projected(s, E);
        SymmetricField r = apply_jacobi(s, sol.h) + sol.c * s.nu2() + s.constant(sol.d) - E;
        CHECK(r.grid_sup() < 1e-8 * E.grid_sup());
        CHECK(std::abs(s.integral(sol.h)) < 1e-10);
        CHECK(std::abs(s.inner(sol.h, s.nu2())) < 1e-10);
        // the solution operator is bounded uniformly in the grid
        CHECK(sol.h.grid_sup() < 10.0 * E.grid_sup());
    }
}

TEST_CASE("hbar: periodic even solution of J[hbar] = 1 with positive integral") {
    const ConformalChart c = build_chart(0.3, kDefaultTol, 512);
    const HbarResult hb = hbar_solve(c);
    CHECK(hb.integral > 0.0);
    CHECK(hb.vop_difference < 1e-6);
    const JacobiSolver s(c, 2);
    const auto Jh = s.apply_mode(0, hb.hbar.values());
    for (double v : Jh) CHECK(v == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("project_coeffs recovers planted c and d") {
    const JacobiSolver s(build_chart(0.3, kDefaultTol, 64), 4);
    const SymmetricField E = 0.7 * s.nu2() + s.constant(-1.25);
    const auto [c, d] = project_coeffs(s, E);
    CHECK(c == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(d == doctest::Approx(-1.25).epsilon(1e-10));
}

TEST_CASE("solver rejects fields on another grid") {
    const JacobiSolver s(build_chart(0.3, kDefaultTol, 64), 4);
    CHECK_THROWS_AS(s.solve(SymmetricField(4, 32, s.chart().tau)), GridMismatch);
}

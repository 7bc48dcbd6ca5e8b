#include "doctest.h"

#include <cmath>
#include <numbers>

#include "necklace/errors.hpp"
#include "necklace/nonlocal.hpp"
#include "oracles.hpp"

using namespace necklace;

namespace {
const DelaunayProfile& profile03() {
    static const DelaunayProfile p = solve_profile(0.3);
    return p;
}
}  // namespace

TEST_CASE("block quadrature weights add up to the block volume") {
    const SurfacePatch coil = build_coil(profile03(), 16);
    const BlockQuadrature q = BlockQuadrature::build(coil, 0.4, BlockResolution{});
    CHECK(q.volume() == doctest::Approx(profile03().V).epsilon(1e-10));
    // the coiling Jacobian 1 + x2 / R integrates to one over a symmetric block
    CHECK(q.coiled_volume(coil.R) == doctest::Approx(profile03().V).epsilon(1e-10));
}

TEST_CASE("ball: shell potential, energy and scaling") {
    CHECK(ball_potential(1.0, 1.0) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK(ball_potential(0.0, 1.0) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(ball_potential(3.0, 1.0) == doctest::Approx(4.0 * std::numbers::pi / 9.0).epsilon(1e-14));
    const double D1 = coulomb_energy(BallRegion{1.0});
    CHECK(D1 == doctest::Approx(16.0 * std::numbers::pi * std::numbers::pi / 15.0).epsilon(1e-12));
    CHECK(coulomb_energy(BallRegion{1.7}) == doctest::Approx(std::pow(1.7, 5) * D1).epsilon(1e-12));
}

TEST_CASE("surface formula reproduces the ball potential on the sphere") {
    const SurfacePatch s = make_sphere(1.3);
    for (double v : {0.2, 1.0, 2.0})
        CHECK(potential_closed(s, 0.5, v) == doctest::Approx(4.0 * std::numbers::pi / 3.0 * 1.3 * 1.3).epsilon(1e-5));
}

TEST_CASE("critical mass") {
    const CriticalMass cm = critical_mass();
    CHECK(cm.closed_form == doctest::Approx(3.512).epsilon(1e-3));
    CHECK(cm.numeric == doctest::Approx(cm.closed_form).epsilon(1e-8));
}

TEST_CASE("block sum agrees with brute force over the whole necklace at n = 4") {
    for (double theta : {0.0, std::numbers::pi / 2}) {
        const double blocks = potential_coil(profile03(), 4, theta, 0.0).value;
        const double brute = oracle::brute_force_potential(profile03(), 4, theta, 32, 64, 64);
        CHECK(std::abs(blocks / brute - 1.0) < 1e-2);
    }
}

TEST_CASE("potential symmetries and block structure") {
    const CoilPotential pot(build_coil(profile03(), 16));
    const CoulombResult r = pot.at(0.4, 0.0);
    for (int k = 1; k < 8; ++k) CHECK(r.breakdown[k] == doctest::Approx(r.breakdown[16 - k]).epsilon(1e-10));
    // y1 -> -y1 reflection and evenness in y3
    CHECK(pot.at(std::numbers::pi - 0.4, 0.0).value == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(pot.at(0.4, 0.5).value == doctest::Approx(pot.at(0.4, -0.5).value).epsilon(1e-8));
    // far blocks decay like 1 / distance
    CHECK(r.breakdown[8] < r.breakdown[1]);
}

TEST_CASE("refinement estimate is small at default resolution") {
    NonlocalOptions o;
    o.error_estimate = true;
    o.tol = 1e-4;
    const CoulombResult r = CoilPotential(build_coil(profile03(), 32), o).at(0.3, 0.2);
    CHECK(r.error_estimate < 1e-5 * r.value);
}

TEST_CASE("potential grows like (2V/T) ln n") {
    std::vector<double> x, y;
    for (int n : {16, 32, 64, 128}) {
        x.push_back(std::log(n));
        y.push_back(potential_coil(profile03(), n, 0.0, 0.0).value);
    }
    const double slope = (y.back() - y.front()) / (x.back() - x.front());
    CHECK(slope == doctest::Approx(2.0 * profile03().V / profile03().T).epsilon(0.05));
}

TEST_CASE("linearised potential of a constant-free perturbation") {
    // for h = eps * field, the perturbed potential changes by eps * potential_linearized
    const ConformalChart chart = build_chart(0.3, kDefaultTol, 1024);
    const int n = 16;
    auto h = std::make_shared<SymmetricField>(4, 64, chart.tau);
    std::vector<double> mode(64);
    for (int j = 0; j < 64; ++j) mode[j] = std::cos(std::numbers::pi * (-chart.tau + 2.0 * chart.tau * j / 64) / chart.tau);
    h->set_mode(2, mode);
    const double eps = 1e-4;
    auto scaled = std::make_shared<SymmetricField>(eps * *h);
    auto neg = std::make_shared<SymmetricField>(-eps * *h);
    const double plus = potential_perturbed(chart, n, scaled, 0.3, 0.4).value;
    const double minus = potential_perturbed(chart, n, neg, 0.3, 0.4).value;
    const double lin = potential_linearized(chart, n, *h, 0.3, 0.4);
    CHECK((plus - minus) / (2.0 * eps) == doctest::Approx(lin).epsilon(2e-3));
}

TEST_CASE("coil energy scales like n V (V / T) ln n") {
    const DelaunayProfile& p = profile03();
    const double D8 = coulomb_energy(CoilRegion{p, 8});
    const double D16 = coulomb_energy(CoilRegion{p, 16});
    CHECK(D8 > 0.0);
    // D(2n) - 2 D(n) = n V (2V/T) ln 2 at leading order
    const double lead = 8.0 * p.V * (2.0 * p.V / p.T) * std::log(2.0);
    CHECK((D16 - 2.0 * D8) / lead == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(CoilPotential(build_coil(profile03(), 3)), DomainError);
    CHECK_THROWS_AS(potential_closed(build_coil(profile03(), 8), 0.0, 0.0), DomainError);
}

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "necklace/errors.hpp"
#include "necklace/field.hpp"

using namespace necklace;

namespace {
constexpr double tau = 2.5;
// a member of the symmetric class with known derivatives
double g(double th, double t) {
    const double w = std::numbers::pi / tau;
    return std::cos(2 * th) * std::cos(w * t) + std::sin(th) * (1.0 + std::cos(2 * w * t)) + 0.3 * std::sin(3 * th);
}
double g_tt(double th, double t) {
    const double w = std::numbers::pi / tau;
    return -w * w * std::cos(2 * th) * std::cos(w * t) - 4 * w * w * std::sin(th) * std::cos(2 * w * t);
}
double g_th(double th, double t) {
    const double w = std::numbers::pi / tau;
    return -2 * std::sin(2 * th) * std::cos(w * t) + std::cos(th) * (1.0 + std::cos(2 * w * t)) + 0.9 * std::cos(3 * th);
}
}  // namespace

TEST_CASE("from_samples reproduces a band-limited symmetric field") {
    const int kmax = 6, N = 32, M = N / 2;
    std::vector<double> samples((kmax + 1) * (M + 1));
    for (int i = 0; i <= kmax; ++i)
        for (int m = 0; m <= M; ++m)
            samples[i * (M + 1) + m] = g(std::numbers::pi * i / kmax - std::numbers::pi / 2, tau * m / M);
    const SymmetricField f = SymmetricField::from_samples(kmax, N, tau, samples);
    for (double th : {0.1, 1.3, -2.0, 3.0})
        for (double t : {0.0, 0.7, -1.9}) {
            const auto e = f.eval(th, t);
            CHECK(e[0] == doctest::Approx(g(th, t)).epsilon(1e-12));
            CHECK(e[1] == doctest::Approx(g_th(th, t)).epsilon(1e-11));
            CHECK(e[5] == doctest::Approx(g_tt(th, t)).epsilon(1e-10));
        }
}

TEST_CASE("symmetry class: reflection across the y2 axis") {
    // cos k theta (k even) and sin k theta (k odd) are invariant under theta -> pi - theta
    for (int k = 0; k < 7; ++k)
        CHECK(SymmetricField::basis(k, 0.4) == doctest::Approx(SymmetricField::basis(k, std::numbers::pi - 0.4)));
}

TEST_CASE("field arithmetic and compatibility") {
    SymmetricField a(4, 16, 1.0), b(4, 16, 1.0), c(4, 32, 1.0);
    a.set_mode(1, std::vector<double>(16, 2.0));
    b.set_mode(1, std::vector<double>(16, 1.0));
    const SymmetricField d = a - 2.0 * b;
    CHECK(d.sup_norm() == doctest::Approx(0.0));
    CHECK(a.compatible(b));
    CHECK_FALSE(a.compatible(c));
    CHECK_THROWS_AS(a += c, GridMismatch);
    CHECK(a.grid_sup() == doctest::Approx(2.0));
}

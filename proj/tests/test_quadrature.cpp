#include "doctest.h"

#include <cmath>
#include <numbers>

#include "necklace/quadrature.hpp"

using namespace necklace;

namespace {
double apply(const Rule& r, auto&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}
}  // namespace

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n - 1") {
    const Rule r = gauss_legendre(6, 0.0, 2.0);
    CHECK(apply(r, [](double x) { return std::pow(x, 11); }) == doctest::Approx(std::pow(2.0, 12) / 12).epsilon(1e-14));
    CHECK(apply(r, [](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("composite_gauss integrates a smooth function") {
    const Rule r = composite_gauss(4, 8, 0.0, std::numbers::pi);
    CHECK(apply(r, [](double x) { return std::sin(x); }) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("periodic trapezoid is spectral for trigonometric polynomials") {
    for (bool shift : {false, true}) {
        const Rule r = periodic_trapezoid(16, 0.0, 2.0 * std::numbers::pi, shift);
        CHECK(apply(r, [](double x) { return std::cos(x) * std::cos(x); }) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
        CHECK(std::abs(apply(r, [](double x) { return std::cos(5 * x); })) < 1e-14);
    }
}

TEST_CASE("simpson_uniform handles odd and even sample counts") {
    for (int n : {9, 10}) {
        const double h = 1.0 / (n - 1);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = std::pow(i * h, 3);
        CHECK(simpson_uniform(y, h) == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("cumulative integrals converge at the advertised order") {
    auto err = [](int n) {
        const double h = std::numbers::pi / (n - 1);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = std::cos(i * h);
        const auto F = cumulative_integral4(y, h);
        double e = 0.0;
        for (int i = 0; i < n; ++i) e = std::max(e, std::abs(F[i] - std::sin(i * h)));
        return e;
    };
    const double order = std::log2(err(33) / err(65));
    CHECK(order > 3.7);
    const auto T = cumulative_trapezoid({0.0, 1.0, 2.0}, 0.5);
    CHECK(T[2] == doctest::Approx(1.0));
}

TEST_CASE("reduction_of_order solves u'' + u = g from the kernel sin t") {
    // u'' + u = 1 with u(0) = u'(0) = 0 has u = 1 - cos t
    const int n = 401;
    const double h = 2.0 / (n - 1);
    std::vector<double> k(n), g(n, 1.0);
    for (int i = 0; i < n; ++i) k[i] = std::sin(i * h);
    const auto u = reduction_of_order(k, 1.0, g, h);
    for (int i = 0; i < n; i += 50) CHECK(u[i] == doctest::Approx(1.0 - std::cos(i * h)).epsilon(1e-7));
}

#pragma once

// Reference computations that share no code path with the library routines they check.

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "necklace/generatrix.hpp"
#include "necklace/profile.hpp"

namespace oracle {

struct DelaunayData {
    double T = 0.0, V = 0.0, Ia = 0.0;
};

// Unduloid data from the first integral f / sqrt(1 + f'^2) - f^2 = a (1 - a), written in the
// variable phi with f = a + (1 - 2a) sin^2 phi, where ds = 2 (f^2 + b) / sqrt(f + f^2 + b) dphi.
inline DelaunayData delaunay_by_quadrature(double a) {
    const double b = a * (1.0 - a);
    auto f_of = [&](double phi) { return a + (1.0 - 2.0 * a) * std::sin(phi) * std::sin(phi); };
    auto ds = [&](double phi) {
        const double f = f_of(phi);
        return 2.0 * (f * f + b) / std::sqrt(f + f * f + b);
    };
    using Q = boost::math::quadrature::gauss<double, 30>;
    const double half = std::numbers::pi / 2.0;
    auto piecewise = [&](auto&& g) {
        double sum = 0.0;
        const int panels = 16;
        for (int k = 0; k < panels; ++k) sum += Q::integrate(g, half * k / panels, half * (k + 1) / panels);
        return sum;
    };
    DelaunayData d;
    d.T = 2.0 * piecewise(ds);
    d.V = 2.0 * std::numbers::pi * piecewise([&](double phi) {
        const double f = f_of(phi);
        return f * f * ds(phi);
    });
    d.Ia = piecewise([&](double phi) {
        const double f = f_of(phi);
        const double w = f * f + b;
        const double fp2 = (f * f - w * w) / (w * w);  // f'^2
        const double q = 1.0 + fp2;
        const double fpp = q / f - 2.0 * std::pow(q, 1.5);
        return f / std::pow(q, 2.5) * (f * fpp * (2.0 - fp2) + (1.0 + 3.0 * fp2) * q) * ds(phi);
    });
    return d;
}

// Midpoint rule over the whole coiled solid in (r_hat, theta, s); target on the boundary at
// (theta, s = 0). Cartesian distances, no block decomposition.
inline double brute_force_potential(const necklace::DelaunayProfile& profile, int n, double theta, int n_r,
                                    int n_theta, int n_s) {
    const necklace::AxialGeneratrix g(profile);
    const double T = profile.T, R = n * T / (2.0 * std::numbers::pi);
    const double f0 = g.f(0.0)[0];
    const std::array<double, 3> y{f0 * std::cos(theta), R + f0 * std::sin(theta), 0.0};
    const double hr = 1.0 / n_r, ht = 2.0 * std::numbers::pi / n_theta, hs = T / n_s;
    double sum = 0.0;
    for (int k = 0; k < n * n_s; ++k) {
        const double s = -0.5 * n * T + (k + 0.5) * hs;
        const double f = g.f(s)[0];
        const double ca = std::cos(s / R), sa = std::sin(s / R);
        for (int j = 0; j < n_theta; ++j) {
            const double t = (j + 0.5) * ht;
            const double c = std::cos(t), sn = std::sin(t);
            for (int i = 0; i < n_r; ++i) {
                const double r = (i + 0.5) * hr;
                const double x1 = r * f * c, x2 = r * f * sn;
                const double d0 = x1 - y[0], d1 = (R + x2) * ca - y[1], d2 = (R + x2) * sa - y[2];
                sum += r * f * f * (1.0 + x2 / R) / std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
            }
        }
    }
    return sum * hr * ht * hs;
}

}  // namespace oracle

#pragma once

#include <cstddef>
#include <vector>

namespace necklace {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule with n points on [lo, hi].
Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

// Composite Gauss-Legendre: `panels` equal panels of `per_panel` points.
Rule composite_gauss(int panels, int per_panel, double lo, double hi);

// Periodic trapezoid rule on [lo, lo + period) with n points, optionally shifted by half a step.
Rule periodic_trapezoid(int n, double lo, double period, bool half_shift = false);

// Composite Simpson on uniformly spaced samples (odd count >= 3); falls back to
// Simpson 3/8 on the last four samples when the count is even.
double simpson_uniform(const std::vector<double>& y, double h);

// Cumulative trapezoid integral, out[0] = 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double h);

}  // namespace necklace

namespace necklace {

// Fourth-order cumulative integral of uniformly spaced samples (piecewise cubic interpolation), out[0] = 0.
std::vector<double> cumulative_integral4(const std::vector<double>& y, double h);

// Reduction of order around a kernel element k of u'' + q u = 0 with k(0) = 0:
// u(t) = k(t) * int_0^t ds / k(s)^2 * int_0^s g(eta) k(eta) d eta on the grid t_i = i h.
// The removable singularity at s = 0 uses the limit g(0) / (2 k'(0)); kp0 = k'(0).
std::vector<double> reduction_of_order(const std::vector<double>& k, double kp0, const std::vector<double>& g, double h);

}  // namespace necklace

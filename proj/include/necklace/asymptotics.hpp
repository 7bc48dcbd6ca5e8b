#pragma once

#include <string>
#include <vector>

namespace necklace {

// Uniform grid t_i = i h on [0, horizon] with the a = 0 profile x0 = sech t and
// the first-order term phi = sech t (-1 + t tanh t).
struct SmallAExpansion {
    double a = 0.0;
    double h = 0.0;
    std::vector<double> t, x0, x0p, phi, phia;
    int iterations = 0;
    double last_ratio = 0.0;  // successive-difference ratio of the final Picard step
    double phia_norm = 0.0;   // sup |phi_a|
};

SmallAExpansion small_a_grid(double horizon, int points);

// L0 psi = psi'' - psi + 6 x0^2 psi by fourth-order central differences
// (the first and last two entries are left at zero).
std::vector<double> apply_L0(const SmallAExpansion& grid, const std::vector<double>& psi);

// Theta(h)(t) = x0'(t) int_0^t ds / x0'(s)^2 int_0^s h x0' : the solution of L0 psi = h with psi(0) = psi'(0) = 0.
std::vector<double> theta_apply(const SmallAExpansion& grid, const std::vector<double>& h);

// Even homogeneous solution of L0 with v(0) = 1, by reduction of order from x0'.
std::vector<double> even_homogeneous(const SmallAExpansion& grid);

// x = x0 + a phi + phi_a with phi_a = O(a^2), computed by Picard iteration of phi_a = Theta(N(phi_a)).
SmallAExpansion phi_correction(double a, double tol = 1e-12, double horizon = 5.0, int points = 2001,
                               int max_iter = 200);

struct MomentRow {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
};

struct MomentTable {
    std::vector<MomentRow> rows;  // five moments then the grand combination
    double tail_bound = 0.0;      // bound on the neglected integral over [40, inf)
};

MomentTable sech_moments(double horizon = 40.0);

struct SlopeFit {
    double slope = 0.0;            // dI/da at 0
    double intercept = 0.0;        // I at a = 0
    double second_derivative = 0.0;
};

// Least-squares fit I = c0 + c1 a + c2 a^2 over the scan points.
SlopeFit ia_slope_check(const std::vector<double>& a, const std::vector<double>& Ia);

}  // namespace necklace

#pragma once

#include <vector>

namespace necklace {

// Delaunay unduloid with mean curvature 2 and neck radius a, sampled on one half period.
struct DelaunayProfile {
    double a = 0.5;
    double tol = 1e-10;
    std::vector<double> s;    // uniform grid on [0, T/2]
    std::vector<double> f;    // f(s_i)
    std::vector<double> fp;   // f'(s_i)
    std::vector<double> fpp;  // f''(s_i)
    double T = 0.0;           // period
    double V = 0.0;           // block volume pi * int_{-T/2}^{T/2} f^2
    double Ia = 0.0;
};

// Isothermal chart (x(t), z(t)) of the same unduloid on [-tau, tau].
struct ConformalChart {
    double a = 0.5;
    double tol = 1e-10;
    double tau = 0.0;
    double T = 0.0;             // 2 z(tau)
    int N = 0;                  // grid points per period 2 tau (even)
    std::vector<double> t;      // N + 1 points from -tau to tau
    std::vector<double> x, xp, z, zp, p;

    double b() const { return a * (1.0 - a); }
    double h() const { return 2.0 * tau / N; }
};

constexpr double kDefaultTol = 1e-10;

// Default sample count per half period: 2048, raised for small necks.
int default_profile_samples(double a);

DelaunayProfile solve_profile(double a, double tol = kDefaultTol, int samples = 0);
double compute_Ia(const DelaunayProfile& profile);

ConformalChart build_chart(double a, double tol = kDefaultTol, int N = 512);
double compute_Ia_conformal(const ConformalChart& chart);

// Right-hand sides of the two ODEs.
double profile_fpp(double f, double fp);
double profile_fppp(double f, double fp, double fpp);

// max_i |f^2 - f / sqrt(1 + f'^2) + a(1 - a)|
double conserved_residual(const DelaunayProfile& profile);
// max_i |x^2 - x'^2 - z'^2|
double isothermal_residual(const ConformalChart& chart);
// max_i |kappa_1 + kappa_2 - 2| from the sampled profile
double profile_curvature_residual(const DelaunayProfile& profile);
// min_i of f^2(-1 + 4f'^2) + a(1-a)(3 + 2f'^2)
double min_fstar(const DelaunayProfile& profile);

}  // namespace necklace

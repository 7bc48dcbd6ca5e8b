#pragma once

#include <memory>
#include <vector>

#include "necklace/field.hpp"
#include "necklace/jacobi.hpp"
#include "necklace/nonlocal.hpp"
#include "necklace/profile.hpp"

namespace necklace {

struct LeadingCoupling {
    double gamma = 0.0;  // 2 I_a T_a / (V_a ln n)
    double c3 = 0.0;     // V_a / T_a
    double c5 = 0.0;     // 2 I_a / c3
};

LeadingCoupling gamma_leading(const DelaunayProfile& profile, int n);

struct ReductionOptions {
    int solver_N = 64;      // t-grid of the Jacobi solver and of the field h
    int kmax = 8;           // theta modes
    int geometry_N = 1024;  // chart samples behind the surface geometry
    double chart_tol = kDefaultTol;
    NonlocalOptions inner = NonlocalOptions::desk();  // potentials inside the iterations
    NonlocalOptions final_pass;                       // potentials for the reported residual
    double tol = 1e-7;                                // relative on the step norm
    int max_iter = 40;
    double damping = 0.5;
    double c_tol = 1e-6;  // |c| < c_tol |d| at the root
    int max_secant = 30;
    double window_M = 0.0;  // half width of the gamma window is M / ln^2 n; 0 selects 2 c5
    int threads = 1;
};

struct IterationRecord {
    int iteration = 0;
    double gamma = 0.0;
    double step_norm = 0.0;
    double omega = 1.0;
    double c = 0.0;
    double d = 0.0;
    double residual = 0.0;
};

struct EquationValue {
    SymmetricField G;  // H + gamma N projected on the field basis
    std::vector<double> samples;
    double c = 0.0;
    double d = 0.0;
    double residual = 0.0;  // max over the sample grid of |G - d|
};

struct ReductionState {
    double a = 0.0;
    int n = 0;
    SymmetricField h;
    double gamma = 0.0;
    double lambda = 0.0;
    double c = 0.0;
    double d = 0.0;
    double residual = 0.0;  // on the sample grid with the iteration potentials
    // full-resolution evaluation of the final state (see Reduction::finalize)
    double final_c = 0.0;
    double final_residual = 0.0;
    int iterations = 0;  // fixed-point steps, summed over the secant sweep in solve_gamma
    bool converged = false;
    std::vector<IterationRecord> history;

    double h_norm() const { return h.grid_sup(); }
};

// Direct evaluation of H + gamma N on the coiled, perturbed necklace for one neck size and n.
class Reduction {
public:
    Reduction(double a, int n, ReductionOptions options = {});

    double a() const { return a_; }
    int n() const { return n_; }
    const DelaunayProfile& profile() const { return profile_; }
    const ConformalChart& geometry_chart() const { return fine_; }
    const JacobiSolver& solver() const { return solver_; }
    const ReductionOptions& options() const { return options_; }
    LeadingCoupling leading() const { return gamma_leading(profile_, n_); }

    // sample grid: theta_i = pi i / kmax - pi / 2, t_m = tau m / (N / 2)
    std::vector<double> thetas() const;
    std::vector<double> ts() const;

    EquationValue evaluate(const SymmetricField& h, double gamma, const NonlocalOptions& nonlocal) const;
    EquationValue evaluate(const SymmetricField& h, double gamma) const { return evaluate(h, gamma, options_.inner); }

    ReductionState fixed_point(double gamma, const SymmetricField* start = nullptr) const;
    ReductionState solve_gamma() const;
    // full-resolution evaluation: sets final_c, final_residual and lambda
    void finalize(ReductionState& state) const;

    // |coiled perturbed solid| by volume quadrature
    double volume(const SymmetricField& h) const;

private:
    double a_;
    int n_;
    ReductionOptions options_;
    DelaunayProfile profile_;
    ConformalChart fine_;
    JacobiSolver solver_;
};

EquationValue evaluate_equation(const Reduction& reduction, const SymmetricField& h, double gamma);
ReductionState fixed_point_solve(const Reduction& reduction, double gamma);
ReductionState solve_gamma(const Reduction& reduction);

// H + gamma N - lambda on a ball of radius r: returns the spread of the left side over a theta-v grid.
double sphere_equation_residual(double radius, double gamma, int n_samples = 6, const SelfResolution& res = {});

enum class MassMode { Full, Leading };

struct MassMap {
    double a = 0.0;
    int n = 0;
    double gamma = 0.0;
    double volume = 0.0;
    double m = 0.0;
    MassMode mode = MassMode::Full;
};

// Full: converged gamma and perturbed volume. Leading: gamma_leading and n V_a.
MassMap mass_map(double a, int n, MassMode mode = MassMode::Full, const ReductionOptions& options = {});

// n from |m (ln m - ln ln m) C_a - n| <= 1 with C_a = 1 / (2 I_a T_a)
int suggest_blocks(double m, const DelaunayProfile& profile);

struct NeckParameter {
    double a = 0.0;
    MassMap map;
    int evaluations = 0;
};

// Bisection on the neck size so that mass_map(a, n).m = m; the bracket endpoints must bound m.
NeckParameter find_neck_for_mass(double m, int n, double a_lo = 0.05, double a_hi = 0.45,
                                 MassMode mode = MassMode::Full, const ReductionOptions& options = {},
                                 double tol = 1e-6);

}  // namespace necklace

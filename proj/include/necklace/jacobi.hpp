#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "necklace/field.hpp"
#include "necklace/profile.hpp"

namespace necklace {

struct ProjectedSolution {
    SymmetricField h;
    double c = 0.0;
    double d = 0.0;
};

// Jacobi operator J = x^-2 (d_thetatheta + d_tt + p) of the unduloid in isothermal
// coordinates, discretised spectrally in t and mode by mode in theta.
class JacobiSolver {
public:
    JacobiSolver(const ConformalChart& chart, int kmax);

    const ConformalChart& chart() const { return chart_; }
    int kmax() const { return kmax_; }
    int N() const { return chart_.N; }

    SymmetricField zero(bool even_y2 = false) const;
    SymmetricField constant(double value) const;
    // nu_2 = sin(theta) z'/x
    SymmetricField nu2() const;
    // t-profiles of the Jacobi fields on the full periodic grid
    std::vector<double> nu12_profile() const;  // z'/x (nu_1 = cos theta *, nu_2 = sin theta *)
    std::vector<double> nu3_profile() const;   // -x'/x (odd in t)

    // x^-2 (u'' - k^2 u + p u) for one theta mode, any parity, on the full grid
    std::vector<double> apply_mode(int k, const std::vector<double>& u) const;
    SymmetricField apply(const SymmetricField& h) const;

    const EvenProfile& hbar() const { return hbar_; }
    double hbar_integral() const { return hbar_integral_; }

    // integral over one period with d sigma = x^2 d theta dt
    double integral(const SymmetricField& f) const;
    double inner(const SymmetricField& f, const SymmetricField& g) const;

    std::pair<double, double> project(const SymmetricField& E) const;
    ProjectedSolution solve(const SymmetricField& E) const;

    double rcond(int k) const { return rcond_[k]; }

private:
    void check(const SymmetricField& f) const;

    ConformalChart chart_;
    int kmax_;
    int M_;
    Eigen::MatrixXd D2_;                 // full periodic second derivative
    Eigen::MatrixXd fold_;               // even-subspace second derivative on t_m = tau m / M
    std::vector<double> w_;              // z'/x on the half grid
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
    std::vector<double> rcond_;
    EvenProfile hbar_;
    double hbar_integral_ = 0.0;
};

// Module-level operations.
SymmetricField apply_jacobi(const JacobiSolver& solver, const SymmetricField& h);

struct HbarResult {
    EvenProfile hbar;
    double integral = 0.0;        // int over Sigma_0 of hbar
    double vop_difference = 0.0;  // max |hbar - (h_vop + hbar(0) u_even)| on [0, 3 tau / 4]
};
HbarResult hbar_solve(const ConformalChart& chart);

std::pair<double, double> project_coeffs(const JacobiSolver& solver, const SymmetricField& E);
ProjectedSolution solve_projected(const JacobiSolver& solver, const SymmetricField& E);

}  // namespace necklace

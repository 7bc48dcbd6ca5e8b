#pragma once

#include <array>
#include <vector>

namespace necklace {

// Even 2tau-periodic profile sampled at t_j = -tau + 2 tau j / N, j = 0..N-1,
// with its cosine-series interpolant.
class EvenProfile {
public:
    EvenProfile() = default;
    EvenProfile(double tau, std::vector<double> values);
    int size() const { return static_cast<int>(values_.size()); }
    double tau() const { return tau_; }
    const std::vector<double>& values() const { return values_; }
    // value, first and second derivative at arbitrary t
    std::array<double, 3> eval(double t) const;
    // exact second derivative of the interpolant on the grid
    std::vector<double> second_derivative() const;

    EvenProfile& operator+=(const EvenProfile& o);
    EvenProfile& operator*=(double s);

private:
    double tau_ = 1.0;
    std::vector<double> values_;
    std::vector<double> coef_;  // g(t) = sum_m coef_m cos(m pi t / tau), m = 0..N/2
};

// Field on one period of the unduloid in the symmetry class: sum over k of
// e_k(t) * (cos k theta for even k, sin k theta for odd k) with even e_k.
class SymmetricField {
public:
    SymmetricField() = default;
    SymmetricField(int kmax, int N, double tau, bool even_y2 = false);

    int kmax() const { return kmax_; }
    int N() const { return N_; }
    double tau() const { return tau_; }
    bool even_y2() const { return even_y2_; }
    bool admissible(int k) const { return !(even_y2_ && k % 2 == 1); }

    // mode k on the full periodic t-grid (length N)
    const std::vector<double>& mode(int k) const { return modes_[k].values(); }
    const EvenProfile& profile(int k) const { return modes_[k]; }
    void set_mode(int k, std::vector<double> values);

    // theta basis function of mode k and its derivatives (order 0..2)
    static double basis(int k, double theta, int order = 0);

    // value at (theta, t_j)
    double at(double theta, int j) const;
    // value with derivatives: {h, h_theta, h_t, h_theta_theta, h_theta_t, h_tt}
    std::array<double, 6> eval(double theta, double t) const;

    // Projection from samples on phi_i = pi i / kmax (theta = phi - pi/2), i = 0..kmax,
    // times the half grid t_m = tau m / (N/2), m = 0..N/2 (row-major [i][m]).
    static SymmetricField from_samples(int kmax, int N, double tau, const std::vector<double>& samples,
                                       bool even_y2 = false);

    double sup_norm() const;  // max over modes and t of |e_k| summed over k (bound on sup |h|)
    double grid_sup() const;  // max |h| over theta samples phi_i and the t-grid
    SymmetricField& operator+=(const SymmetricField& o);
    SymmetricField& operator-=(const SymmetricField& o);
    SymmetricField& operator*=(double s);
    bool compatible(const SymmetricField& o) const;

private:
    int kmax_ = 0, N_ = 0;
    double tau_ = 1.0;
    bool even_y2_ = false;
    std::vector<EvenProfile> modes_;
};

SymmetricField operator+(SymmetricField a, const SymmetricField& b);
SymmetricField operator-(SymmetricField a, const SymmetricField& b);
SymmetricField operator*(double s, SymmetricField a);

}  // namespace necklace

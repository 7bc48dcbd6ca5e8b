#pragma once

#include <array>
#include <memory>
#include <vector>

#include "necklace/profile.hpp"

namespace necklace {

// r(v), z(v) and their first three derivatives.
struct CurveJet {
    std::array<double, 4> r{};
    std::array<double, 4> z{};
};

// Quintic Hermite interpolant through values, first and second derivatives on a uniform grid.
class QuinticHermite {
public:
    QuinticHermite() = default;
    QuinticHermite(double x0, double h, std::vector<double> p, std::vector<double> p1, std::vector<double> p2);
    // value and derivatives 1..3 at x inside [x0, x0 + h (n - 1)]
    std::array<double, 4> eval(double x) const;
    double lo() const { return x0_; }
    double hi() const { return x0_ + h_ * (p_.size() - 1); }

private:
    double x0_ = 0.0, h_ = 1.0;
    std::vector<double> p_, p1_, p2_;
};

// Meridian curve of a surface of revolution around the third axis.
class Generatrix {
public:
    virtual ~Generatrix() = default;
    virtual CurveJet eval(double v) const = 0;
    // parameter period (0 when the curve is a closed arc such as the sphere meridian)
    virtual double period() const = 0;
    // axial advance z(v + period) - z(v)
    virtual double axial_period() const = 0;
    // parameter domain for non-periodic curves
    virtual double vmin() const { return 0.0; }
    virtual double vmax() const { return period(); }
};

using GeneratrixPtr = std::shared_ptr<const Generatrix>;

// r = f(s), z = s from a sampled profile.
class AxialGeneratrix : public Generatrix {
public:
    explicit AxialGeneratrix(const DelaunayProfile& profile);
    CurveJet eval(double s) const override;
    double period() const override { return T_; }
    double axial_period() const override { return T_; }
    double vmin() const override { return -0.5 * T_; }
    double vmax() const override { return 0.5 * T_; }
    // f, f', f'', f''' at s
    std::array<double, 4> f(double s) const;

private:
    double T_;
    QuinticHermite spline_;
};

// r = x(t), z = z(t) from an isothermal chart.
class ConformalGeneratrix : public Generatrix {
public:
    explicit ConformalGeneratrix(const ConformalChart& chart);
    CurveJet eval(double t) const override;
    double period() const override { return 2.0 * tau_; }
    double axial_period() const override { return T_; }
    double vmin() const override { return -tau_; }
    double vmax() const override { return tau_; }

private:
    double tau_, T_, b_;
    QuinticHermite x_, z_;
};

// Meridian of the sphere of radius rho: r = rho sin v, z = -rho cos v, v in [0, pi].
class SphereGeneratrix : public Generatrix {
public:
    explicit SphereGeneratrix(double rho = 1.0) : rho_(rho) {}
    CurveJet eval(double v) const override;
    double period() const override { return 0.0; }
    double axial_period() const override { return 0.0; }
    double vmin() const override { return 0.0; }
    double vmax() const override;

private:
    double rho_;
};

// Straight line r = rho, z = v, treated as periodic with the given period.
class CylinderGeneratrix : public Generatrix {
public:
    CylinderGeneratrix(double rho, double period) : rho_(rho), period_(period) {}
    CurveJet eval(double v) const override;
    double period() const override { return period_; }
    double axial_period() const override { return period_; }
    double vmin() const override { return -0.5 * period_; }
    double vmax() const override { return 0.5 * period_; }

private:
    double rho_, period_;
};

}  // namespace necklace

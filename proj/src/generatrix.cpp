#include "necklace/generatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "necklace/errors.hpp"

namespace necklace {

QuinticHermite::QuinticHermite(double x0, double h, std::vector<double> p, std::vector<double> p1,
                               std::vector<double> p2)
    : x0_(x0), h_(h), p_(std::move(p)), p1_(std::move(p1)), p2_(std::move(p2)) {
    if (p_.size() < 2 || p1_.size() != p_.size() || p2_.size() != p_.size())
        throw GridMismatch("QuinticHermite: inconsistent sample arrays");
}

std::array<double, 4> QuinticHermite::eval(double x) const {
    const std::size_t cells = p_.size() - 1;
    double u = (x - x0_) / h_;
    std::size_t i = u <= 0.0 ? 0 : std::min(cells - 1, static_cast<std::size_t>(u));
    u -= static_cast<double>(i);
    const double h = h_, h2 = h * h;
    const double a0 = p_[i], a1 = h * p1_[i], a2 = h2 * p2_[i];
    const double b0 = p_[i + 1], b1 = h * p1_[i + 1], b2 = h2 * p2_[i + 1];
    const double c0 = a0, c1 = a1, c2 = 0.5 * a2;
    const double c3 = -10.0 * a0 - 6.0 * a1 - 1.5 * a2 + 10.0 * b0 - 4.0 * b1 + 0.5 * b2;
    const double c4 = 15.0 * a0 + 8.0 * a1 + 1.5 * a2 - 15.0 * b0 + 7.0 * b1 - b2;
    const double c5 = -6.0 * a0 - 3.0 * a1 - 0.5 * a2 + 6.0 * b0 - 3.0 * b1 + 0.5 * b2;
    const double v = c0 + u * (c1 + u * (c2 + u * (c3 + u * (c4 + u * c5))));
    const double d1 = c1 + u * (2.0 * c2 + u * (3.0 * c3 + u * (4.0 * c4 + u * 5.0 * c5)));
    const double d2 = 2.0 * c2 + u * (6.0 * c3 + u * (12.0 * c4 + u * 20.0 * c5));
    const double d3 = 6.0 * c3 + u * (24.0 * c4 + u * 60.0 * c5);
    return {v, d1 / h, d2 / h2, d3 / (h2 * h)};
}

namespace {

// Reduces v to [-P/2, P/2) and returns the number of periods removed.
double reduce(double v, double P, long& k) {
    k = static_cast<long>(std::floor(v / P + 0.5));
    return v - P * static_cast<double>(k);
}

}  // namespace

AxialGeneratrix::AxialGeneratrix(const DelaunayProfile& pr)
    : T_(pr.T), spline_(0.0, pr.s[1] - pr.s[0], pr.f, pr.fp, pr.fpp) {}

std::array<double, 4> AxialGeneratrix::f(double s) const {
    long k;
    double u = reduce(s, T_, k);
    const double sg = u < 0.0 ? -1.0 : 1.0;
    auto e = spline_.eval(std::abs(u));
    const double f3 = profile_fppp(e[0], e[1], e[2]);
    return {e[0], sg * e[1], e[2], sg * f3};
}

CurveJet AxialGeneratrix::eval(double s) const {
    CurveJet c;
    c.r = f(s);
    c.z = {s, 1.0, 0.0, 0.0};
    return c;
}

ConformalGeneratrix::ConformalGeneratrix(const ConformalChart& ch) : tau_(ch.tau), T_(ch.T), b_(ch.b()) {
    const int half = ch.N / 2;
    std::vector<double> x(half + 1), x1(half + 1), x2(half + 1), z(half + 1), z1(half + 1), z2(half + 1);
    for (int m = 0; m <= half; ++m) {
        const int j = half + m;
        x[m] = ch.x[j];
        x1[m] = ch.xp[j];
        x2[m] = (1.0 - 2.0 * b_) * x[m] - 2.0 * x[m] * x[m] * x[m];
        z[m] = ch.z[j];
        z1[m] = b_ + x[m] * x[m];
        z2[m] = 2.0 * x[m] * x1[m];
    }
    x_ = QuinticHermite(0.0, ch.h(), x, x1, x2);
    z_ = QuinticHermite(0.0, ch.h(), z, z1, z2);
}

CurveJet ConformalGeneratrix::eval(double t) const {
    long k;
    double u = reduce(t, 2.0 * tau_, k);
    const double sg = u < 0.0 ? -1.0 : 1.0;
    auto xe = x_.eval(std::abs(u));
    const double x = xe[0], x1 = sg * xe[1];
    const double x2 = (1.0 - 2.0 * b_) * x - 2.0 * x * x * x;
    const double x3 = (1.0 - 2.0 * b_) * x1 - 6.0 * x * x * x1;
    CurveJet c;
    c.r = {x, x1, x2, x3};
    const double z = sg * z_.eval(std::abs(u))[0] + T_ * static_cast<double>(k);
    c.z = {z, b_ + x * x, 2.0 * x * x1, 2.0 * x1 * x1 + 2.0 * x * x2};
    return c;
}

double SphereGeneratrix::vmax() const { return std::numbers::pi; }

CurveJet SphereGeneratrix::eval(double v) const {
    const double s = std::sin(v), c = std::cos(v);
    CurveJet j;
    j.r = {rho_ * s, rho_ * c, -rho_ * s, -rho_ * c};
    j.z = {-rho_ * c, rho_ * s, rho_ * c, -rho_ * s};
    return j;
}

CurveJet CylinderGeneratrix::eval(double v) const {
    CurveJet j;
    j.r = {rho_, 0.0, 0.0, 0.0};
    j.z = {v, 1.0, 0.0, 0.0};
    return j;
}

}  // namespace necklace

#include "necklace/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "necklace/errors.hpp"
#include "necklace/quadrature.hpp"

namespace necklace {

SmallAExpansion small_a_grid(double horizon, int points) {
    if (points < 8 || !(horizon > 0.0)) throw DomainError("small-a grid needs a positive horizon and >= 8 points");
    SmallAExpansion e;
    e.h = horizon / (points - 1);
    e.t.resize(points);
    e.x0.resize(points);
    e.x0p.resize(points);
    e.phi.resize(points);
    for (int i = 0; i < points; ++i) {
        const double t = i * e.h, s = 1.0 / std::cosh(t), th = std::tanh(t);
        e.t[i] = t;
        e.x0[i] = s;
        e.x0p[i] = -s * th;
        e.phi[i] = s * (-1.0 + t * th);
    }
    e.phia.assign(points, 0.0);
    return e;
}

std::vector<double> apply_L0(const SmallAExpansion& g, const std::vector<double>& psi) {
    const std::size_t n = psi.size();
    std::vector<double> out(n, 0.0);
    const double h2 = g.h * g.h;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double d2 = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h2);
        out[i] = d2 - psi[i] + 6.0 * g.x0[i] * g.x0[i] * psi[i];
    }
    return out;
}

std::vector<double> theta_apply(const SmallAExpansion& g, const std::vector<double>& h) {
    if (h.size() != g.t.size()) throw GridMismatch("theta_apply: sample count differs from the grid");
    return reduction_of_order(g.x0p, -1.0, h, g.h);
}

std::vector<double> even_homogeneous(const SmallAExpansion& g) {
    // v = k (-1/t + int_0^t (1/k^2 - 1/s^2) ds) with k = x0', k'(0) = -1
    const std::size_t n = g.t.size();
    std::vector<double> r(n);
    for (std::size_t i = 1; i < n; ++i) r[i] = 1.0 / (g.x0p[i] * g.x0p[i]) - 1.0 / (g.t[i] * g.t[i]);
    // the regular part is even in s; extrapolate r(0) from r(h), r(2h), r(3h) in s^2
    const double r1 = r[1], r2 = r[2], r3 = r[3];
    // quadratic in s^2 through s^2 = 1, 4, 9 (units h^2), evaluated at 0
    r[0] = r1 * 36.0 / 24.0 - r2 * 9.0 / 15.0 + r3 * 4.0 / 40.0;
    const std::vector<double> R = cumulative_integral4(r, g.h);
    std::vector<double> v(n);
    v[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) v[i] = g.x0p[i] * (-1.0 / g.t[i] + R[i]);
    return v;
}

SmallAExpansion phi_correction(double a, double tol, double horizon, int points, int max_iter) {
    if (!(a > 0.0 && a <= 0.05)) throw DomainError("phi_correction needs 0 < a <= 0.05");
    SmallAExpansion e = small_a_grid(horizon, points);
    e.a = a;
    const double b = a * (1.0 - a);
    const std::size_t n = e.t.size();
    std::vector<double> psi(n, 0.0), rhs(n);
    double prev_step = 0.0;
    int growth = 0;
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x0 = e.x0[i], q = a * e.phi[i] + psi[i];
            rhs[i] = 2.0 * a * a * x0 - 2.0 * a * a * (1.0 - a) * e.phi[i] - 2.0 * b * psi[i] - 6.0 * x0 * q * q -
                     2.0 * q * q * q;
        }
        std::vector<double> next = theta_apply(e, rhs);
        double step = 0.0, norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            step = std::max(step, std::abs(next[i] - psi[i]));
            norm = std::max(norm, std::abs(next[i]));
        }
        psi.swap(next);
        e.iterations = it;
        if (prev_step > 0.0) {
            e.last_ratio = step / prev_step;
            growth = (e.last_ratio >= 1.0) ? growth + 1 : 0;
            if (growth >= 3) throw NoContraction("phi_a iteration does not contract");
        }
        prev_step = step;
        if (step <= tol * std::max(norm, a * a)) break;
        if (it == max_iter) throw NoContraction("phi_a iteration did not reach the tolerance");
    }
    e.phia = psi;
    e.phia_norm = 0.0;
    for (double v : psi) e.phia_norm = std::max(e.phia_norm, std::abs(v));
    return e;
}

MomentTable sech_moments(double horizon) {
    const Rule rule = composite_gauss(static_cast<int>(std::ceil(4.0 * horizon)), 12, 0.0, horizon);
    auto integrate = [&](auto fn) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * fn(rule.x[i]);
        return s;
    };
    auto sech = [](double t) { return 1.0 / std::cosh(t); };
    MomentTable tab;
    auto add = [&](const std::string& name, double expected, auto fn) {
        tab.rows.push_back({name, integrate(fn), expected});
    };
    add("int sech^2", 1.0, [&](double t) { return std::pow(sech(t), 2); });
    add("int sech^4", 2.0 / 3.0, [&](double t) { return std::pow(sech(t), 4); });
    add("int sech^6", 8.0 / 15.0, [&](double t) { return std::pow(sech(t), 6); });
    add("int sech^4 t tanh t", 1.0 / 6.0, [&](double t) { return std::pow(sech(t), 4) * t * std::tanh(t); });
    add("int sech^6 t tanh t", 4.0 / 45.0, [&](double t) { return std::pow(sech(t), 6) * t * std::tanh(t); });
    add("grand combination", 2.0, [&](double t) {
        const double x = sech(t), tt = t * std::tanh(t);
        const double x2 = x * x, x4 = x2 * x2, x6 = x4 * x2;
        return -30.0 * x4 + 6.0 * x2 + 30.0 * x6 + 16.0 * x4 * tt - 30.0 * x6 * tt;
    });
    // sech^2 <= 4 e^{-2t}, and every integrand is bounded by 46 (1 + t) sech^2
    tab.tail_bound = 46.0 * 4.0 * std::exp(-2.0 * horizon) * (1.0 + horizon + 0.5) / 2.0;
    return tab;
}

SlopeFit ia_slope_check(const std::vector<double>& a, const std::vector<double>& Ia) {
    if (a.size() != Ia.size() || a.size() < 3) throw DomainError("slope fit needs at least three scan points");
    if (*std::min_element(a.begin(), a.end()) > 1e-2) throw DomainError("slope fit needs a scan point with a <= 0.01");
    Eigen::MatrixXd A(a.size(), 3);
    Eigen::VectorXd y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = a[i];
        A(i, 2) = a[i] * a[i];
        y[i] = Ia[i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    return {c[1], c[0], 2.0 * c[2]};
}

}  // namespace necklace

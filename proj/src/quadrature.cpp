#include "necklace/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace necklace {

Rule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dx = p1 / (n * (x * p1 - p0) / (x * x - 1.0));
            x -= dx;
            if (std::abs(dx) < 3e-16) break;
        }
        // recompute derivative at converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = mid - half * x;
        r.x[n - 1 - i] = mid + half * x;
        r.w[i] = r.w[n - 1 - i] = half * w;
    }
    return r;
}

Rule composite_gauss(int panels, int per_panel, double lo, double hi) {
    Rule r;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        Rule g = gauss_legendre(per_panel, lo + p * h, lo + (p + 1) * h);
        r.x.insert(r.x.end(), g.x.begin(), g.x.end());
        r.w.insert(r.w.end(), g.w.begin(), g.w.end());
    }
    return r;
}

Rule periodic_trapezoid(int n, double lo, double period, bool half_shift) {
    Rule r;
    r.x.resize(n);
    r.w.assign(n, period / n);
    for (int i = 0; i < n; ++i) r.x[i] = lo + period * (i + (half_shift ? 0.5 : 0.0)) / n;
    return r;
}

double simpson_uniform(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("simpson_uniform: need at least 3 samples");
    std::size_t m = (n % 2 == 1) ? n : n - 3;  // samples covered by plain Simpson
    double s = 0.0;
    if (m >= 3) {
        s = y[0] + y[m - 1];
        for (std::size_t i = 1; i + 1 < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
        s *= h / 3.0;
    }
    if (m != n) {
        std::size_t j = n - 4;
        s += 3.0 * h / 8.0 * (y[j] + 3.0 * y[j + 1] + 3.0 * y[j + 2] + y[j + 3]);
    }
    return s;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double h) {
    std::vector<double> out(y.size(), 0.0);
    for (std::size_t i = 1; i < y.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (y[i] + y[i - 1]);
    return out;
}

}  // namespace necklace

namespace necklace {

std::vector<double> cumulative_integral4(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) return cumulative_trapezoid(y, h);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double s;
        if (i == 0) s = 9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3];
        else if (i + 2 >= n) s = y[i - 2] - 5.0 * y[i - 1] + 19.0 * y[i] + 9.0 * y[i + 1];
        else s = -y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2];
        out[i + 1] = out[i] + s * h / 24.0;
    }
    return out;
}

std::vector<double> reduction_of_order(const std::vector<double>& k, double kp0, const std::vector<double>& g, double h) {
    const std::size_t n = k.size();
    std::vector<double> gk(n);
    for (std::size_t i = 0; i < n; ++i) gk[i] = g[i] * k[i];
    const std::vector<double> inner = cumulative_integral4(gk, h);
    std::vector<double> q(n);
    q[0] = g[0] / (2.0 * kp0);
    for (std::size_t i = 1; i < n; ++i) q[i] = inner[i] / (k[i] * k[i]);
    const std::vector<double> outer = cumulative_integral4(q, h);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = k[i] * outer[i];
    return u;
}

}  // namespace necklace

#include "necklace/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "necklace/errors.hpp"
#include "necklace/quadrature.hpp"

namespace necklace {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;

bool is_cylinder(double a) { return std::abs(a - 0.5) < 1e-14; }

void check_neck(double a) {
    if (!(a > 0.0 && a <= 0.5)) throw DomainError("neck parameter a must lie in (0, 1/2]");
}

double inner_tol(double tol) { return std::max(tol * 1e-2, 1e-14); }

// Integrates from state y0 until component `idx` crosses zero upwards (it starts at 0 and
// first goes negative). Returns the crossing time.
template <class State, class System>
double locate_event(System sys, const State& y0, std::size_t idx, double horizon, double tol) {
    using Stepper = odeint::runge_kutta_fehlberg78<State>;
    auto controlled = odeint::make_controlled<Stepper>(inner_tol(tol), inner_tol(tol));
    Stepper single;
    State y = y0;
    double t = 0.0, dt = 1e-3;
    while (t < horizon) {
        State prev = y;
        double tprev = t;
        int fails = 0;
        while (controlled.try_step(sys, y, t, dt) == odeint::fail) {
            if (++fails > 200) throw NonConvergence("step size control failed");
        }
        dt = std::min(dt, 0.05);
        if (prev[idx] < 0.0 && y[idx] >= 0.0) {
            double lo = 0.0, hi = t - tprev;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, tprev); ++it) {
                double mid = 0.5 * (lo + hi);
                State w = prev;
                single.do_step(sys, w, tprev, mid);
                if (w[idx] < 0.0) lo = mid; else hi = mid;
            }
            return tprev + 0.5 * (lo + hi);
        }
    }
    throw NonConvergence("neck event not bracketed within the safety horizon");
}

template <class State, class System>
std::vector<State> sample_at(System sys, const State& y0, const std::vector<double>& times, double tol) {
    using Stepper = odeint::runge_kutta_fehlberg78<State>;
    auto controlled = odeint::make_controlled<Stepper>(inner_tol(tol), inner_tol(tol));
    std::vector<State> out;
    out.reserve(times.size());
    State y = y0;
    odeint::integrate_times(controlled, sys, y, times.begin(), times.end(), 1e-4,
                            [&](const State& st, double) { out.push_back(st); });
    return out;
}

}  // namespace

int default_profile_samples(double a) {
    int m = std::max(2048, static_cast<int>(std::ceil(16.0 / a)));
    return m + (m % 2);
}

double profile_fpp(double f, double fp) {
    const double q = 1.0 + fp * fp;
    return q / f - 2.0 * q * std::sqrt(q);
}

double profile_fppp(double f, double fp, double fpp) {
    const double q = 1.0 + fp * fp;
    return 2.0 * fp * fpp / f - q * fp / (f * f) - 6.0 * fp * fpp * std::sqrt(q);
}

DelaunayProfile solve_profile(double a, double tol, int samples) {
    check_neck(a);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    DelaunayProfile pr;
    pr.a = a;
    pr.tol = tol;
    const int m = samples > 0 ? samples + (samples % 2) : default_profile_samples(a);

    double half;
    if (is_cylinder(a)) {
        half = kPi / 2.0;
        pr.s.resize(m + 1);
        for (int i = 0; i <= m; ++i) pr.s[i] = half * i / m;
        pr.f.assign(m + 1, 0.5);
        pr.fp.assign(m + 1, 0.0);
        pr.fpp.assign(m + 1, 0.0);
    } else {
        using State = std::array<double, 2>;
        auto sys = [](const State& y, State& dy, double) {
            dy[0] = y[1];
            dy[1] = profile_fpp(y[0], y[1]);
        };
        const State y0{1.0 - a, 0.0};
        half = locate_event(sys, y0, 1, 4.0, tol);
        pr.s.resize(m + 1);
        for (int i = 0; i <= m; ++i) pr.s[i] = half * i / m;
        pr.s[m] = half;
        auto states = sample_at(sys, y0, pr.s, tol);
        if (states.size() != pr.s.size()) throw NonConvergence("profile sampling incomplete");
        pr.f.resize(m + 1);
        pr.fp.resize(m + 1);
        pr.fpp.resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            pr.f[i] = states[i][0];
            pr.fp[i] = states[i][1];
            pr.fpp[i] = profile_fpp(pr.f[i], pr.fp[i]);
        }
        // the event is a root of f'; snap the sampled endpoint
        pr.fp[m] = 0.0;
        pr.fpp[m] = profile_fpp(pr.f[m], 0.0);
    }
    pr.T = 2.0 * half;
    std::vector<double> f2(m + 1);
    for (int i = 0; i <= m; ++i) f2[i] = pr.f[i] * pr.f[i];
    pr.V = 2.0 * kPi * simpson_uniform(f2, half / m);
    pr.Ia = compute_Ia(pr);
    return pr;
}

double compute_Ia(const DelaunayProfile& pr) {
    const std::size_t n = pr.s.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = pr.f[i], p = pr.fp[i], q = 1.0 + p * p;
        g[i] = f / std::pow(q, 2.5) * (f * pr.fpp[i] * (2.0 - p * p) + (1.0 + 3.0 * p * p) * q);
    }
    return simpson_uniform(g, pr.s[1] - pr.s[0]);
}

ConformalChart build_chart(double a, double tol, int N) {
    check_neck(a);
    if (N < 8 || N % 2 != 0) throw DomainError("chart grid size must be even and >= 8");
    ConformalChart ch;
    ch.a = a;
    ch.tol = tol;
    ch.N = N;
    const double b = a * (1.0 - a);
    const int half = N / 2;
    std::vector<double> ts(half + 1), x(half + 1), xp(half + 1), z(half + 1);
    if (is_cylinder(a)) {
        ch.tau = kPi;
        for (int m = 0; m <= half; ++m) {
            ts[m] = ch.tau * m / half;
            x[m] = 0.5;
            xp[m] = 0.0;
            z[m] = 0.5 * ts[m];
        }
    } else {
        using State = std::array<double, 3>;
        auto sys = [b](const State& y, State& dy, double) {
            dy[0] = y[1];
            dy[1] = (1.0 - 2.0 * b) * y[0] - 2.0 * y[0] * y[0] * y[0];
            dy[2] = b + y[0] * y[0];
        };
        const State y0{1.0 - a, 0.0, 0.0};
        ch.tau = locate_event(sys, y0, 1, 60.0, tol);
        for (int m = 0; m <= half; ++m) ts[m] = ch.tau * m / half;
        ts[half] = ch.tau;
        auto states = sample_at(sys, y0, ts, tol);
        if (static_cast<int>(states.size()) != half + 1) throw NonConvergence("chart sampling incomplete");
        for (int m = 0; m <= half; ++m) {
            x[m] = states[m][0];
            xp[m] = states[m][1];
            z[m] = states[m][2];
        }
        xp[half] = 0.0;
    }
    ch.T = 2.0 * z[half];
    ch.t.resize(N + 1);
    ch.x.resize(N + 1);
    ch.xp.resize(N + 1);
    ch.z.resize(N + 1);
    ch.zp.resize(N + 1);
    ch.p.resize(N + 1);
    for (int m = 0; m <= half; ++m) {
        for (int sgn : {-1, 1}) {
            const int j = half + sgn * m;
            ch.t[j] = sgn * ts[m];
            ch.x[j] = x[m];
            ch.xp[j] = sgn * xp[m];
            ch.z[j] = sgn * z[m];
        }
    }
    for (int j = 0; j <= N; ++j) {
        const double xx = ch.x[j];
        ch.zp[j] = b + xx * xx;
        const double k2x = ch.zp[j] / xx;  // x * kappa_2
        ch.p[j] = k2x * k2x + (2.0 * xx - k2x) * (2.0 * xx - k2x);
    }
    return ch;
}

double compute_Ia_conformal(const ConformalChart& ch) {
    // A B is even and 2 tau periodic, so the trapezoid rule on [0, tau] is spectrally accurate.
    const double b = ch.b();
    const int half = ch.N / 2;
    double sum = 0.0;
    for (int m = 0; m <= half; ++m) {
        const int j = half + m;
        const double x2 = ch.x[j] * ch.x[j], xp2 = ch.xp[j] * ch.xp[j], zp2 = ch.zp[j] * ch.zp[j];
        const double A = b + x2;
        const double B = -zp2 + 4.0 * xp2 + (b / x2) * (3.0 * zp2 + 2.0 * xp2);
        sum += (m == 0 || m == half ? 0.5 : 1.0) * A * B;
    }
    return sum * ch.h();
}

double conserved_residual(const DelaunayProfile& pr) {
    const double b = pr.a * (1.0 - pr.a);
    double r = 0.0;
    for (std::size_t i = 0; i < pr.s.size(); ++i) {
        const double f = pr.f[i];
        r = std::max(r, std::abs(f * f - f / std::sqrt(1.0 + pr.fp[i] * pr.fp[i]) + b));
    }
    return r;
}

double isothermal_residual(const ConformalChart& ch) {
    double r = 0.0;
    for (std::size_t j = 0; j < ch.t.size(); ++j)
        r = std::max(r, std::abs(ch.x[j] * ch.x[j] - ch.xp[j] * ch.xp[j] - ch.zp[j] * ch.zp[j]));
    return r;
}

double profile_curvature_residual(const DelaunayProfile& pr) {
    double r = 0.0;
    for (std::size_t i = 0; i < pr.s.size(); ++i) {
        const double q = 1.0 + pr.fp[i] * pr.fp[i];
        const double H = -pr.fpp[i] / (q * std::sqrt(q)) + 1.0 / (pr.f[i] * std::sqrt(q));
        r = std::max(r, std::abs(H - 2.0));
    }
    return r;
}

double min_fstar(const DelaunayProfile& pr) {
    const double b = pr.a * (1.0 - pr.a);
    double m = INFINITY;
    for (std::size_t i = 0; i < pr.s.size(); ++i) {
        const double f = pr.f[i], p2 = pr.fp[i] * pr.fp[i];
        m = std::min(m, f * f * (-1.0 + 4.0 * p2) + b * (3.0 + 2.0 * p2));
    }
    return m;
}

}  // namespace necklace

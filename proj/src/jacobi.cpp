#include "necklace/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "necklace/errors.hpp"
#include "necklace/quadrature.hpp"

namespace necklace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRcondFloor = 1e-10;

}  // namespace

JacobiSolver::JacobiSolver(const ConformalChart& chart, int kmax) : chart_(chart), kmax_(kmax), M_(chart.N / 2) {
    if (kmax < 0) throw DomainError("kmax must be non-negative");
    const int N = chart.N, M = M_;
    const double h0 = 2.0 * kPi / N;
    const double scale = (kPi / chart.tau) * (kPi / chart.tau);
    D2_.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) {
                D2_(i, j) = scale * (-kPi * kPi / (3.0 * h0 * h0) - 1.0 / 6.0);
            } else {
                const double s = std::sin(0.5 * (i - j) * h0);
                D2_(i, j) = scale * (((i - j) % 2 == 0) ? -1.0 : 1.0) / (2.0 * s * s);
            }
        }
    fold_.resize(M + 1, M + 1);
    for (int m = 0; m <= M; ++m) {
        const int i = (M + m) % N;
        for (int q = 0; q <= M; ++q) {
            if (q == 0) fold_(m, q) = D2_(i, M);
            else if (q == M) fold_(m, q) = D2_(i, 0);
            else fold_(m, q) = D2_(i, M + q) + D2_(i, M - q);
        }
    }
    w_.resize(M + 1);
    for (int m = 0; m <= M; ++m) w_[m] = chart.zp[M + m] / chart.x[M + m];

    lu_.resize(kmax + 1);
    rcond_.assign(kmax + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        Eigen::MatrixXd A = fold_;
        for (int m = 0; m <= M; ++m) A(m, m) += chart.p[M + m] - double(k) * k;
        if (k == 1) {
            // border with the kernel direction nu_2 (column) and orthogonality (row)
            Eigen::MatrixXd B = Eigen::MatrixXd::Zero(M + 2, M + 2);
            B.topLeftCorner(M + 1, M + 1) = A;
            for (int m = 0; m <= M; ++m) {
                const double x2 = chart.x[M + m] * chart.x[M + m];
                const double W = (m == 0 || m == M) ? 0.5 : 1.0;
                B(m, M + 1) = x2 * w_[m];
                B(M + 1, m) = W * x2 * w_[m];
            }
            A = B;
        }
        lu_[k].compute(A);
        rcond_[k] = lu_[k].rcond();
        if (!(rcond_[k] > kRcondFloor)) {
            if (k == 0) throw SingularSystem("theta-independent Jacobi operator is numerically singular");
            throw IllConditioned("Jacobi mode " + std::to_string(k) + " is ill-conditioned", k);
        }
    }

    // hbar: even periodic solution of h'' + p h = x^2
    Eigen::VectorXd rhs(M + 1);
    for (int m = 0; m <= M; ++m) rhs[m] = chart.x[M + m] * chart.x[M + m];
    Eigen::VectorXd u = lu_[0].solve(rhs);
    std::vector<double> full(N);
    double s = 0.0;
    for (int m = 0; m <= M; ++m) {
        full[(M + m) % N] = u[m];
        full[(M - m + N) % N] = u[m];
        const double W = (m == 0 || m == M) ? 0.5 : 1.0;
        s += W * u[m] * rhs[m];
    }
    hbar_ = EvenProfile(chart.tau, std::move(full));
    hbar_integral_ = 2.0 * kPi * 2.0 * s * chart.h();
}

void JacobiSolver::check(const SymmetricField& f) const {
    if (f.N() != chart_.N || f.kmax() != kmax_ || std::abs(f.tau() - chart_.tau) > 1e-12 * chart_.tau)
        throw GridMismatch("field does not live on the solver grid");
}

SymmetricField JacobiSolver::zero(bool even_y2) const { return SymmetricField(kmax_, chart_.N, chart_.tau, even_y2); }

SymmetricField JacobiSolver::constant(double value) const {
    SymmetricField f = zero(true);
    f.set_mode(0, std::vector<double>(chart_.N, value));
    return f;
}

std::vector<double> JacobiSolver::nu12_profile() const {
    std::vector<double> v(chart_.N);
    for (int j = 0; j < chart_.N; ++j) v[j] = chart_.zp[j] / chart_.x[j];
    return v;
}

std::vector<double> JacobiSolver::nu3_profile() const {
    std::vector<double> v(chart_.N);
    for (int j = 0; j < chart_.N; ++j) v[j] = -chart_.xp[j] / chart_.x[j];
    return v;
}

SymmetricField JacobiSolver::nu2() const {
    if (kmax_ < 1) throw DomainError("nu_2 needs kmax >= 1");
    SymmetricField f = zero();
    f.set_mode(1, nu12_profile());
    return f;
}

std::vector<double> JacobiSolver::apply_mode(int k, const std::vector<double>& u) const {
    const int N = chart_.N;
    if (static_cast<int>(u.size()) != N) throw GridMismatch("profile length differs from the chart grid");
    Eigen::Map<const Eigen::VectorXd> uv(u.data(), N);
    Eigen::VectorXd r = D2_ * uv;
    std::vector<double> out(N);
    for (int j = 0; j < N; ++j)
        out[j] = (r[j] + (chart_.p[j] - double(k) * k) * u[j]) / (chart_.x[j] * chart_.x[j]);
    return out;
}

SymmetricField JacobiSolver::apply(const SymmetricField& h) const {
    check(h);
    const int N = chart_.N, M = M_;
    SymmetricField out = zero(h.even_y2());
    for (int k = 0; k <= kmax_; ++k) {
        if (!h.admissible(k)) continue;
        const auto& e = h.mode(k);
        Eigen::VectorXd u(M + 1);
        for (int m = 0; m <= M; ++m) u[m] = e[(M + m) % N];
        Eigen::VectorXd r = fold_ * u;
        std::vector<double> full(N);
        for (int m = 0; m <= M; ++m) {
            const int j = M + m;
            const double v = (r[m] + (chart_.p[j] - double(k) * k) * u[m]) / (chart_.x[j] * chart_.x[j]);
            full[j % N] = v;
            full[(M - m + N) % N] = v;
        }
        out.set_mode(k, std::move(full));
    }
    return out;
}

double JacobiSolver::integral(const SymmetricField& f) const {
    check(f);
    double s = 0.0;
    for (int j = 0; j < chart_.N; ++j) s += f.mode(0)[j] * chart_.x[j] * chart_.x[j];
    return 2.0 * kPi * s * chart_.h();
}

double JacobiSolver::inner(const SymmetricField& f, const SymmetricField& g) const {
    check(f);
    check(g);
    double total = 0.0;
    for (int k = 0; k <= kmax_; ++k) {
        double s = 0.0;
        for (int j = 0; j < chart_.N; ++j) s += f.mode(k)[j] * g.mode(k)[j] * chart_.x[j] * chart_.x[j];
        total += (k == 0 ? 2.0 * kPi : kPi) * s;
    }
    return total * chart_.h();
}

std::pair<double, double> JacobiSolver::project(const SymmetricField& E) const {
    check(E);
    const int N = chart_.N, M = M_;
    double cn = 0.0, cd = 0.0, dn = 0.0, dd = 0.0;
    for (int m = 0; m <= M; ++m) {
        const int j = M + m;
        const double W = (m == 0 || m == M) ? 0.5 : 1.0;
        const double x2 = chart_.x[j] * chart_.x[j];
        const double hb = hbar_.values()[j % N];
        if (kmax_ >= 1) {
            cn += W * E.mode(1)[j % N] * w_[m] * x2;
            cd += W * w_[m] * w_[m] * x2;
        }
        dn += W * E.mode(0)[j % N] * hb * x2;
        dd += W * hb * x2;
    }
    return {kmax_ >= 1 ? cn / cd : 0.0, dn / dd};
}

ProjectedSolution JacobiSolver::solve(const SymmetricField& E) const {
    check(E);
    const int N = chart_.N, M = M_;
    ProjectedSolution sol;
    std::tie(sol.c, sol.d) = project(E);
    sol.h = zero(E.even_y2());
    for (int k = 0; k <= kmax_; ++k) {
        if (!E.admissible(k)) continue;
        const auto& e = E.mode(k);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k == 1 ? M + 2 : M + 1);
        for (int m = 0; m <= M; ++m) {
            const int j = M + m;
            double val = e[j % N];
            if (k == 0) val -= sol.d;
            if (k == 1) val -= sol.c * w_[m];
            rhs[m] = chart_.x[j] * chart_.x[j] * val;
        }
        Eigen::VectorXd u = lu_[k].solve(rhs);
        std::vector<double> full(N);
        for (int m = 0; m <= M; ++m) {
            full[(M + m) % N] = u[m];
            full[(M - m + N) % N] = u[m];
        }
        sol.h.set_mode(k, std::move(full));
    }
    return sol;
}

SymmetricField apply_jacobi(const JacobiSolver& solver, const SymmetricField& h) { return solver.apply(h); }

std::pair<double, double> project_coeffs(const JacobiSolver& solver, const SymmetricField& E) {
    return solver.project(E);
}

ProjectedSolution solve_projected(const JacobiSolver& solver, const SymmetricField& E) { return solver.solve(E); }

HbarResult hbar_solve(const ConformalChart& chart) {
    JacobiSolver solver(chart, 0);
    HbarResult res;
    res.hbar = solver.hbar();
    res.integral = solver.hbar_integral();
    const int M = chart.N / 2;
    const double b = chart.b();
    const double h = chart.h();
    const int upto = (3 * M) / 4;

    // particular solution through nu_3 = -x'/x, with hbar'' + p hbar = x^2
    std::vector<double> k(upto + 1), g(upto + 1);
    for (int m = 0; m <= upto; ++m) {
        const int j = M + m;
        k[m] = -chart.xp[j] / chart.x[j];
        g[m] = chart.x[j] * chart.x[j];
    }
    const double x0 = chart.x[M];
    const double kp0 = -((1.0 - 2.0 * b) * x0 - 2.0 * x0 * x0 * x0) / x0;
    if (std::abs(kp0) < 1e-12) {
        res.vop_difference = 0.0;  // cylinder: nu_3 vanishes identically
        return res;
    }
    const std::vector<double> hp = reduction_of_order(k, kp0, g, h);

    // even homogeneous solution u(0) = 1, u'(0) = 0, integrated with the chart ODE
    using State = std::array<double, 4>;
    auto sys = [b](const State& y, State& dy, double) {
        const double x = y[0], xp = y[1];
        const double zp = b + x * x;
        const double k2x = zp / x;
        const double p = k2x * k2x + (2.0 * x - k2x) * (2.0 * x - k2x);
        dy[0] = xp;
        dy[1] = (1.0 - 2.0 * b) * x - 2.0 * x * x * x;
        dy[2] = y[3];
        dy[3] = -p * y[2];
    };
    std::vector<double> times(upto + 1);
    for (int m = 0; m <= upto; ++m) times[m] = m * h;
    std::vector<double> ue;
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1e-13, 1e-13);
    State y0{x0, 0.0, 1.0, 0.0};
    odeint::integrate_times(stepper, sys, y0, times.begin(), times.end(), 1e-3,
                            [&](const State& s, double) { ue.push_back(s[2]); });
    const double h0 = res.hbar.values()[M];
    double diff = 0.0;
    for (int m = 0; m <= upto; ++m)
        diff = std::max(diff, std::abs(res.hbar.values()[M + m] - (hp[m] + h0 * ue[m])));
    res.vop_difference = diff;
    return res;
}

}  // namespace necklace

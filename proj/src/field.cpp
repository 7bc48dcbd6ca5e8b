#include "necklace/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "necklace/errors.hpp"

namespace necklace {

namespace {
constexpr double kPi = std::numbers::pi;
}

EvenProfile::EvenProfile(double tau, std::vector<double> values) : tau_(tau), values_(std::move(values)) {
    const int N = size();
    if (N < 4 || N % 2 != 0) throw GridMismatch("EvenProfile: grid size must be even and >= 4");
    const int M = N / 2;
    coef_.assign(M + 1, 0.0);
    // DCT-I of the half grid t_m = tau m / M (index N/2 + m, wrapping to 0 at m = M)
    for (int k = 0; k <= M; ++k) {
        double s = 0.0;
        for (int m = 0; m <= M; ++m) {
            const double g = values_[(M + m) % N];
            const double w = (m == 0 || m == M) ? 0.5 : 1.0;
            s += w * g * std::cos(kPi * k * m / M);
        }
        coef_[k] = (k == 0 || k == M ? 1.0 : 2.0) * s / M;
    }
}

std::array<double, 3> EvenProfile::eval(double t) const {
    const double w = kPi / tau_;
    const double x = w * t;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double c = 1.0, s = 0.0;  // cos(mx), sin(mx)
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (std::size_t m = 0; m < coef_.size(); ++m) {
        const double mw = w * static_cast<double>(m);
        v += coef_[m] * c;
        d1 -= coef_[m] * mw * s;
        d2 -= coef_[m] * mw * mw * c;
        const double cn = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = cn;
    }
    return {v, d1, d2};
}

std::vector<double> EvenProfile::second_derivative() const {
    const int N = size();
    std::vector<double> out(N);
    for (int j = 0; j < N; ++j) out[j] = eval(-tau_ + 2.0 * tau_ * j / N)[2];
    return out;
}

EvenProfile& EvenProfile::operator+=(const EvenProfile& o) {
    if (o.values_.size() != values_.size()) throw GridMismatch("EvenProfile: size mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
    return *this;
}

EvenProfile& EvenProfile::operator*=(double s) {
    for (double& v : values_) v *= s;
    for (double& v : coef_) v *= s;
    return *this;
}

SymmetricField::SymmetricField(int kmax, int N, double tau, bool even_y2)
    : kmax_(kmax), N_(N), tau_(tau), even_y2_(even_y2) {
    if (kmax < 0) throw DomainError("kmax must be non-negative");
    modes_.assign(kmax + 1, EvenProfile(tau, std::vector<double>(N, 0.0)));
}

void SymmetricField::set_mode(int k, std::vector<double> values) {
    if (k < 0 || k > kmax_) throw GridMismatch("mode index out of range");
    if (static_cast<int>(values.size()) != N_) throw GridMismatch("mode grid size mismatch");
    if (!admissible(k)) {
        for (double v : values)
            if (v != 0.0) throw DomainError("odd mode in an even-in-y2 field");
    }
    modes_[k] = EvenProfile(tau_, std::move(values));
}

double SymmetricField::basis(int k, double theta, int order) {
    const double c = std::cos(k * theta), s = std::sin(k * theta), k2 = double(k) * k;
    if (k % 2 == 0) {
        if (order == 0) return c;
        if (order == 1) return -k * s;
        return -k2 * c;
    }
    if (order == 0) return s;
    if (order == 1) return k * c;
    return -k2 * s;
}

double SymmetricField::at(double theta, int j) const {
    double v = 0.0;
    for (int k = 0; k <= kmax_; ++k) v += modes_[k].values()[j] * basis(k, theta);
    return v;
}

std::array<double, 6> SymmetricField::eval(double theta, double t) const {
    std::array<double, 6> r{};
    for (int k = 0; k <= kmax_; ++k) {
        if (!admissible(k)) continue;
        auto e = modes_[k].eval(t);
        const double b0 = basis(k, theta, 0), b1 = basis(k, theta, 1), b2 = basis(k, theta, 2);
        r[0] += e[0] * b0;
        r[1] += e[0] * b1;
        r[2] += e[1] * b0;
        r[3] += e[0] * b2;
        r[4] += e[1] * b1;
        r[5] += e[2] * b0;
    }
    return r;
}

SymmetricField SymmetricField::from_samples(int kmax, int N, double tau, const std::vector<double>& samples,
                                            bool even_y2) {
    const int M = N / 2;
    if (kmax < 1 || static_cast<int>(samples.size()) != (kmax + 1) * (M + 1))
        throw GridMismatch("from_samples: sample table has the wrong shape");
    SymmetricField F(kmax, N, tau, even_y2);
    const int K = kmax;
    for (int k = 0; k <= K; ++k) {
        // cos(k phi) = sign_k * basis_k(theta) with phi = theta + pi/2
        const double sign = (k % 2 == 0) ? ((k / 2) % 2 == 0 ? 1.0 : -1.0) : (((k - 1) / 2) % 2 == 0 ? -1.0 : 1.0);
        std::vector<double> vals(N, 0.0);
        if (F.admissible(k)) {
            for (int m = 0; m <= M; ++m) {
                double s = 0.0;
                for (int i = 0; i <= K; ++i) {
                    const double w = (i == 0 || i == K) ? 0.5 : 1.0;
                    s += w * samples[i * (M + 1) + m] * std::cos(kPi * k * i / K);
                }
                const double c = (k == 0 || k == K ? 1.0 : 2.0) * s / K;
                vals[(M + m) % N] = sign * c;
                vals[(M - m + N) % N] = sign * c;
            }
        }
        F.modes_[k] = EvenProfile(tau, std::move(vals));
    }
    return F;
}

double SymmetricField::sup_norm() const {
    double r = 0.0;
    for (int j = 0; j < N_; ++j) {
        double s = 0.0;
        for (int k = 0; k <= kmax_; ++k) s += std::abs(modes_[k].values()[j]);
        r = std::max(r, s);
    }
    return r;
}

double SymmetricField::grid_sup() const {
    const int K = std::max(2, 2 * kmax_);
    double r = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double theta = kPi * i / K - 0.5 * kPi;
        for (int j = 0; j < N_; ++j) r = std::max(r, std::abs(at(theta, j)));
    }
    return r;
}

bool SymmetricField::compatible(const SymmetricField& o) const {
    return kmax_ == o.kmax_ && N_ == o.N_ && std::abs(tau_ - o.tau_) <= 1e-12 * std::max(1.0, tau_);
}

SymmetricField& SymmetricField::operator+=(const SymmetricField& o) {
    if (!compatible(o)) throw GridMismatch("field grids differ");
    for (int k = 0; k <= kmax_; ++k) modes_[k] += o.modes_[k];
    even_y2_ = even_y2_ && o.even_y2_;
    return *this;
}

SymmetricField& SymmetricField::operator-=(const SymmetricField& o) {
    if (!compatible(o)) throw GridMismatch("field grids differ");
    for (int k = 0; k <= kmax_; ++k) {
        EvenProfile neg = o.modes_[k];
        neg *= -1.0;
        modes_[k] += neg;
    }
    even_y2_ = even_y2_ && o.even_y2_;
    return *this;
}

SymmetricField& SymmetricField::operator*=(double s) {
    for (auto& m : modes_) m *= s;
    return *this;
}

SymmetricField operator+(SymmetricField a, const SymmetricField& b) { return a += b; }
SymmetricField operator-(SymmetricField a, const SymmetricField& b) { return a -= b; }
SymmetricField operator*(double s, SymmetricField a) { return a *= s; }

}  // namespace necklace

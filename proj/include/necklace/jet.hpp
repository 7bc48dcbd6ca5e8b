#pragma once

#include <array>
#include <cmath>

namespace necklace {

// Second-order forward-mode jet in two variables (u0, u1):
// value, gradient and the three distinct Hessian entries (00, 01, 11).
struct Jet {
    double v = 0.0;
    std::array<double, 2> d{0.0, 0.0};
    std::array<double, 3> h{0.0, 0.0, 0.0};

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Jet variable(double value, int which) {
        Jet j(value);
        j.d[which] = 1.0;
        return j;
    }
};

// Composition g(u) for a scalar function with g, g', g'' at u.v.
inline Jet compose(const Jet& u, double g, double g1, double g2) {
    Jet r(g);
    r.d = {g1 * u.d[0], g1 * u.d[1]};
    r.h = {g1 * u.h[0] + g2 * u.d[0] * u.d[0], g1 * u.h[1] + g2 * u.d[0] * u.d[1],
           g1 * u.h[2] + g2 * u.d[1] * u.d[1]};
    return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.v + b.v);
    for (int i = 0; i < 2; ++i) r.d[i] = a.d[i] + b.d[i];
    for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] + b.h[i];
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.v - b.v);
    for (int i = 0; i < 2; ++i) r.d[i] = a.d[i] - b.d[i];
    for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] - b.h[i];
    return r;
}

inline Jet operator-(const Jet& a) { return Jet(0.0) - a; }

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v);
    for (int i = 0; i < 2; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    r.h[0] = a.h[0] * b.v + 2.0 * a.d[0] * b.d[0] + a.v * b.h[0];
    r.h[1] = a.h[1] * b.v + a.d[0] * b.d[1] + a.d[1] * b.d[0] + a.v * b.h[1];
    r.h[2] = a.h[2] * b.v + 2.0 * a.d[1] * b.d[1] + a.v * b.h[2];
    return r;
}

inline Jet operator*(double s, const Jet& a) {
    Jet r(s * a.v);
    for (int i = 0; i < 2; ++i) r.d[i] = s * a.d[i];
    for (int i = 0; i < 3; ++i) r.h[i] = s * a.h[i];
    return r;
}

inline Jet operator*(const Jet& a, double s) { return s * a; }

inline Jet inverse(const Jet& a) {
    const double i = 1.0 / a.v;
    return compose(a, i, -i * i, 2.0 * i * i * i);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet sin(const Jet& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

using Jet3 = std::array<Jet, 3>;

}  // namespace necklace

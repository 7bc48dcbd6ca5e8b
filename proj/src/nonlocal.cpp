#include "necklace/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "necklace/errors.hpp"
#include "necklace/parallel.hpp"
#include "necklace/quadrature.hpp"

namespace necklace {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 value(const Jet3& j) { return {j[0].v, j[1].v, j[2].v}; }
Vec3 tangent(const Jet3& j, int k) { return {j[0].d[k], j[1].d[k], j[2].d[k]}; }

// rotation about the first axis taking block 0 to block k
Vec3 rotate(const Vec3& p, double c, double s) { return {p[0], c * p[1] - s * p[2], s * p[1] + c * p[2]}; }

// smooth cutoff: 1 at u = 0, 0 for u >= 1, all derivatives vanish at both ends
double cutoff(double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    return std::exp(2.0 * std::exp(-1.0 / u) / (u - 1.0));
}

Rule window_rule(int n, double lo, double hi) {
    const int panels = std::max(1, (n + 15) / 16);
    const int per = std::max(2, (n + panels - 1) / panels);
    return composite_gauss(panels, per, lo, hi);
}

struct SurfNode {
    double theta = 0.0, v = 0.0;
    Vec3 X{};
    Vec3 N{};  // outward normal times area element
    double w = 0.0;
};

// Lateral nodes of the window [v0, v1] (straight parameter rectangle mapped by patch.position).
std::vector<SurfNode> lateral_nodes(const SurfacePatch& patch, double v0, double v1, int n_theta, int n_v) {
    const Rule th = periodic_trapezoid(n_theta, 0.0, 2.0 * kPi);
    const Rule vr = window_rule(n_v, v0, v1);
    std::vector<SurfNode> out;
    out.reserve(th.x.size() * vr.x.size());
    for (std::size_t j = 0; j < vr.x.size(); ++j)
        for (std::size_t i = 0; i < th.x.size(); ++i) {
            const Jet3 P = patch.position(th.x[i], vr.x[j]);
            out.push_back({th.x[i], vr.x[j], value(P), cross(tangent(P, 0), tangent(P, 1)), th.w[i] * vr.w[j]});
        }
    return out;
}

// Cap nodes at parameter v (sign +1 for the upper cap, -1 for the lower one).
std::vector<SurfNode> cap_nodes(const SurfacePatch& patch, double v, double sign, int n_r, int n_theta) {
    const Rule rr = gauss_legendre(n_r, 0.0, 1.0);
    const Rule th = periodic_trapezoid(n_theta, 0.0, 2.0 * kPi, true);
    std::vector<SurfNode> out;
    for (std::size_t i = 0; i < th.x.size(); ++i) {
        const auto mer = patch.meridian(th.x[i], v);
        Jet rho(mer[0].v), Z(mer[1].v);
        rho.d = {0.0, mer[0].d[0]};
        Z.d = {0.0, mer[1].d[0]};
        const Jet tj = Jet::variable(th.x[i], 1);
        for (std::size_t k = 0; k < rr.x.size(); ++k) {
            const Jet r = Jet::variable(rr.x[k], 0);
            Jet3 y{r * rho * cos(tj), r * rho * sin(tj), Z};
            if (patch.coiled()) y = coil_map(y, patch.R);
            Vec3 N = cross(tangent(y, 0), tangent(y, 1));
            for (double& c : N) c *= sign;
            out.push_back({th.x[i], v, value(y), N, rr.w[k] * th.w[i]});
        }
    }
    return out;
}

double flux_term(const SurfNode& s, const Vec3& target) {
    const Vec3 d = sub(s.X, target);
    const double r = norm(d);
    return r > 0.0 ? 0.5 * dot(d, s.N) / r : 0.0;
}

// Local polar frame around the singular parameter point.
struct PolarFrame {
    double theta = 0.0, v = 0.0;
    double s_theta = 1.0, s_v = 1.0;  // sqrt(g11), sqrt(g22)
    double rho0 = 0.0;

    double radius(double theta_x, double v_x) const {
        double dt = std::remainder(theta_x - theta, 2.0 * kPi);
        return std::hypot(s_theta * dt, s_v * (v_x - v));
    }
};

PolarFrame make_frame(const SurfacePatch& patch, double theta, double v, double v_room, double fraction) {
    const Jet3 P = patch.position(theta, v);
    PolarFrame f;
    f.theta = theta;
    f.v = v;
    f.s_theta = norm(tangent(P, 0));
    f.s_v = norm(tangent(P, 1));
    f.rho0 = fraction * std::min(kPi * f.s_theta, v_room * f.s_v);
    return f;
}

// Near part of a lateral integral: int chi(rho / rho0) F dA in polar coordinates around the frame centre.
template <class Integrand>
double polar_part(const SurfacePatch& patch, const PolarFrame& f, int n_rho, int n_alpha, Integrand&& F) {
    const Rule rr = gauss_legendre(n_rho, 0.0, f.rho0);
    const Rule al = periodic_trapezoid(n_alpha, 0.0, 2.0 * kPi, true);
    const double jac = 1.0 / (f.s_theta * f.s_v);
    double sum = 0.0;
    for (std::size_t i = 0; i < rr.x.size(); ++i) {
        const double rho = rr.x[i];
        const double chi = cutoff(rho / f.rho0);
        for (std::size_t j = 0; j < al.x.size(); ++j) {
            const double th = f.theta + rho * std::cos(al.x[j]) / f.s_theta;
            const double v = f.v + rho * std::sin(al.x[j]) / f.s_v;
            const Jet3 P = patch.position(th, v);
            SurfNode s{th, v, value(P), cross(tangent(P, 0), tangent(P, 1)), 1.0};
            sum += rr.w[i] * al.w[j] * rho * jac * chi * F(s);
        }
    }
    return sum;
}

struct KernelNodes {
    std::vector<double> x1, x2, x3, wc, c;  // wc = w (1 + x2 / R), c = 1 + x2 / R
};

KernelNodes kernel_nodes(const BlockQuadrature& q, double R) {
    KernelNodes k;
    const std::size_t n = q.w.size();
    k.x1.resize(n);
    k.x2.resize(n);
    k.x3.resize(n);
    k.wc.resize(n);
    k.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        k.x1[i] = q.x[i][0];
        k.x2[i] = q.x[i][1];
        k.x3[i] = q.x[i][2];
        k.c[i] = 1.0 + q.x[i][1] / R;
        k.wc[i] = q.w[i] * k.c[i];
    }
    return k;
}

// Adds I_k(y) for the listed blocks.
void block_sums(const KernelNodes& kn, const Vec3& y, double R, double T, const std::vector<int>& blocks,
                std::vector<double>& out) {
    const std::size_t nb = blocks.size();
    std::vector<double> sa(nb), ca(nb), acc(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        const double A = blocks[b] * T / (2.0 * R);
        sa[b] = std::sin(A);
        ca[b] = std::cos(A);
    }
    const double cy = 1.0 + y[1] / R;
    const double fourR2 = 4.0 * R * R;
    for (std::size_t i = 0; i < kn.wc.size(); ++i) {
        const double d1 = kn.x1[i] - y[0], d2 = kn.x2[i] - y[1];
        const double d12 = d1 * d1 + d2 * d2;
        const double fac = fourR2 * kn.c[i] * cy;
        const double delta = (kn.x3[i] - y[2]) / (2.0 * R);
        const double cd = std::cos(delta), sd = std::sin(delta);
        for (std::size_t b = 0; b < nb; ++b) {
            const double s = sa[b] * cd + ca[b] * sd;
            acc[b] += kn.wc[i] / std::sqrt(d12 + fac * s * s);
        }
    }
    for (std::size_t b = 0; b < nb; ++b) out[blocks[b]] += acc[b];
}

}  // namespace

BlockResolution BlockResolution::refined() const { return {n_r * 3 / 2, n_phi * 3 / 2, n_z * 3 / 2}; }

SelfResolution SelfResolution::refined() const {
    return {n_theta * 3 / 2, n_v * 3 / 2, n_rho * 3 / 2, n_alpha * 3 / 2, n_cap_r * 3 / 2, n_cap_theta * 3 / 2,
            rho_fraction};
}

NonlocalOptions NonlocalOptions::desk() {
    NonlocalOptions o;
    o.block = {10, 16, 24};
    o.far = {6, 10, 12};
    o.near_blocks = 2;
    o.self = {24, 32, 12, 16, 8, 16, 0.5};
    return o;
}

BlockQuadrature BlockQuadrature::build(const SurfacePatch& patch, double v_center, const BlockResolution& res) {
    const double P = patch.curve->period();
    if (!(P > 0.0)) throw DomainError("block quadrature needs a periodic generatrix");
    BlockQuadrature q;
    q.resolution = res;
    q.v_center = v_center;
    const Rule rr = gauss_legendre(res.n_r, 0.0, 1.0);
    const Rule th = periodic_trapezoid(res.n_phi, 0.0, 2.0 * kPi, true);
    const Rule vr = window_rule(res.n_z, v_center - 0.5 * P, v_center + 0.5 * P);
    q.x.reserve(rr.x.size() * th.x.size() * vr.x.size());
    for (std::size_t j = 0; j < vr.x.size(); ++j)
        for (std::size_t i = 0; i < th.x.size(); ++i) {
            const auto mer = patch.meridian(th.x[i], vr.x[j]);
            const double rho = mer[0].v, Z = mer[1].v, Zv = mer[1].d[1];
            const double c = std::cos(th.x[i]), s = std::sin(th.x[i]);
            for (std::size_t k = 0; k < rr.x.size(); ++k) {
                const double r = rr.x[k] * rho;
                q.x.push_back({r * c, r * s, Z});
                q.w.push_back(rr.w[k] * th.w[i] * vr.w[j] * rr.x[k] * rho * rho * Zv);
            }
        }
    return q;
}

double BlockQuadrature::volume() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

double BlockQuadrature::coiled_volume(double R) const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (1.0 + x[i][1] / R);
    return s;
}

CoilPotential::CoilPotential(SurfacePatch patch, NonlocalOptions options)
    : patch_(std::move(patch)), options_(options) {
    if (!patch_.coiled()) throw DomainError("CoilPotential needs a coiled patch");
    if (patch_.n < 4) throw DomainError("potential evaluation needs n >= 4");
}

std::vector<CoulombResult> CoilPotential::evaluate_row(const std::vector<double>& thetas, double v,
                                                       const NonlocalOptions& opt) const {
    const SurfacePatch& p = patch_;
    const int n = p.n;
    const double R = p.R, T = p.T, P = p.curve->period();
    const double v0 = v - 0.5 * P, v1 = v + 0.5 * P;

    std::vector<int> near_b, far_b;
    for (int k = 1; k < n; ++k) (std::min(k, n - k) <= opt.near_blocks ? near_b : far_b).push_back(k);
    const KernelNodes kn_near = kernel_nodes(BlockQuadrature::build(p, v, opt.block), R);
    KernelNodes kn_far;
    if (!far_b.empty()) kn_far = kernel_nodes(BlockQuadrature::build(p, v, opt.far), R);

    const SelfResolution& sr = opt.self;
    const std::vector<SurfNode> lateral = lateral_nodes(p, v0, v1, sr.n_theta, sr.n_v);
    std::vector<SurfNode> caps = cap_nodes(p, v1, 1.0, sr.n_cap_r, sr.n_cap_theta);
    {
        auto bottom = cap_nodes(p, v0, -1.0, sr.n_cap_r, sr.n_cap_theta);
        caps.insert(caps.end(), bottom.begin(), bottom.end());
    }

    std::vector<CoulombResult> out(thetas.size());
    parallel_for(thetas.size(), opt.threads, [&](std::size_t idx) {
        const double theta = thetas[idx];
        const Jet3 ys = p.straight_position(theta, v);
        const Vec3 y = value(ys);
        const Vec3 yt = coil_point(y, R);
        const PolarFrame frame = make_frame(p, theta, v, 0.5 * P, sr.rho_fraction);
        double self = polar_part(p, frame, sr.n_rho, sr.n_alpha, [&](const SurfNode& s) { return flux_term(s, yt); });
        for (const auto& s : lateral) {
            const double chi = cutoff(frame.radius(s.theta, s.v) / frame.rho0);
            if (chi < 1.0) self += s.w * (1.0 - chi) * flux_term(s, yt);
        }
        for (const auto& s : caps) self += s.w * flux_term(s, yt);

        CoulombResult r;
        r.n = n;
        r.y = {theta, v};
        r.breakdown.assign(n, 0.0);
        r.breakdown[0] = self;
        block_sums(kn_near, y, R, T, near_b, r.breakdown);
        if (!far_b.empty()) block_sums(kn_far, y, R, T, far_b, r.breakdown);
        for (int k = 0; k < n; ++k) r.value += r.breakdown[k];
        out[idx] = std::move(r);
    });
    return out;
}

CoulombResult CoilPotential::evaluate(double theta, double v, const NonlocalOptions& opt) const {
    return evaluate_row({theta}, v, opt).front();
}

CoulombResult CoilPotential::at(double theta, double v) const {
    CoulombResult r = evaluate(theta, v, options_);
    if (options_.error_estimate) {
        NonlocalOptions fine = options_;
        fine.block = fine.block.refined();
        fine.far = fine.far.refined();
        fine.self = fine.self.refined();
        const CoulombResult rf = evaluate(theta, v, fine);
        r.error_estimate = std::abs(rf.value - r.value);
        if (options_.tol > 0.0 && r.error_estimate > options_.tol * std::abs(rf.value))
            throw QuadratureDivergence("potential quadrature did not stabilise under refinement");
    }
    return r;
}

std::vector<double> CoilPotential::row(const std::vector<double>& thetas, double v) const {
    auto res = evaluate_row(thetas, v, options_);
    std::vector<double> out(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) out[i] = res[i].value;
    return out;
}

CoulombResult potential_coil(const DelaunayProfile& profile, int n, double theta, double y3,
                             const NonlocalOptions& options) {
    return CoilPotential(build_coil(profile, n), options).at(theta, y3);
}

CoulombResult potential_perturbed(const ConformalChart& chart, int n, std::shared_ptr<const SymmetricField> h,
                                  double theta, double t, const NonlocalOptions& options) {
    return CoilPotential(build_coil(chart, n, std::move(h)), options).at(theta, t);
}

double potential_linearized(const ConformalChart& chart, int n, const SymmetricField& h, double theta, double t,
                            const NonlocalOptions& options) {
    const SurfacePatch p = build_coil(chart, n);
    const double R = p.R, P = p.curve->period();
    const SelfResolution& sr = options.self;

    // w = DX(y) nu(y), with nu the straight unit normal
    auto pushed_normal = [&](double th, double v) {
        const Jet3 ys = p.straight_position(th, v);
        Vec3 nu = cross(tangent(ys, 0), tangent(ys, 1));
        const double nn = norm(nu);
        for (double& c : nu) c /= nn;
        const double ang = ys[2].v / R, rad = R + ys[1].v;
        const double ca = std::cos(ang), sa = std::sin(ang);
        return Vec3{nu[0], nu[1] * ca - rad * sa * nu[2] / R, nu[1] * sa + rad * ca * nu[2] / R};
    };
    const Vec3 yt = value(p.position(theta, t));
    const Vec3 wy = pushed_normal(theta, t);
    const double hy = h.eval(theta, t)[0];
    auto integrand = [&](const SurfNode& s, double c, double sn) {
        const Vec3 X = rotate(s.X, c, sn), N = rotate(s.N, c, sn), wx = rotate(pushed_normal(s.theta, s.v), c, sn);
        const double r = norm(sub(X, yt));
        if (r == 0.0) return 0.0;
        return (h.eval(s.theta, s.v)[0] * dot(wx, N) - hy * dot(wy, N)) / r;
    };
    const PolarFrame frame = make_frame(p, theta, t, 0.5 * P, sr.rho_fraction);
    double sum = polar_part(p, frame, sr.n_rho, sr.n_alpha, [&](const SurfNode& s) { return integrand(s, 1.0, 0.0); });
    const auto lateral = lateral_nodes(p, t - 0.5 * P, t + 0.5 * P, sr.n_theta, sr.n_v);
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * kPi * k / n, c = std::cos(ang), sn = std::sin(ang);
        for (const auto& s : lateral) {
            double wgt = s.w;
            if (k == 0) wgt *= 1.0 - cutoff(frame.radius(s.theta, s.v) / frame.rho0);
            if (wgt != 0.0) sum += wgt * integrand(s, c, sn);
        }
    }
    return sum;
}

double potential_closed(const SurfacePatch& patch, double theta, double v, const SelfResolution& res) {
    if (patch.coiled() || patch.curve->period() > 0.0) throw DomainError("potential_closed needs a closed surface");
    const double v0 = patch.curve->vmin(), v1 = patch.curve->vmax();
    const Vec3 y = value(patch.position(theta, v));
    const PolarFrame frame = make_frame(patch, theta, v, std::min(v - v0, v1 - v), res.rho_fraction);
    double sum = polar_part(patch, frame, res.n_rho, res.n_alpha, [&](const SurfNode& s) { return flux_term(s, y); });
    for (const auto& s : lateral_nodes(patch, v0, v1, res.n_theta, res.n_v)) {
        const double chi = cutoff(frame.radius(s.theta, s.v) / frame.rho0);
        if (chi < 1.0) sum += s.w * (1.0 - chi) * flux_term(s, y);
    }
    return sum;
}

double ball_potential(double s, double radius) {
    // shells inside s act from the centre, shells outside contribute 4 pi r dr
    const double split = std::min(s, radius);
    const Rule in = gauss_legendre(8, 0.0, split);
    const Rule out = gauss_legendre(8, split, radius);
    double u = 0.0;
    if (s > 0.0)
        for (std::size_t i = 0; i < in.x.size(); ++i) u += in.w[i] * 4.0 * kPi * in.x[i] * in.x[i] / s;
    for (std::size_t i = 0; i < out.x.size(); ++i) u += out.w[i] * 4.0 * kPi * out.x[i];
    return u;
}

double coulomb_energy(const BallRegion& ball) {
    const Rule r = gauss_legendre(16, 0.0, ball.radius);
    double d = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) d += r.w[i] * ball_potential(r.x[i], ball.radius) * 4.0 * kPi * r.x[i] * r.x[i];
    return 0.5 * d;
}

double coulomb_energy(const CoilRegion& coil) {
    // D = -1/4 double surface integral of |x - y| n_x . n_y, reduced to n separations by rotation
    const SurfacePatch p = build_coil(coil.profile, coil.n);
    const auto nodes = lateral_nodes(p, p.curve->vmin(), p.curve->vmax(), coil.n_theta, coil.n_v);
    const int n = coil.n;
    std::vector<double> per(n, 0.0);
    for (int k = 0; k <= n / 2; ++k) {
        const double ang = 2.0 * kPi * k / n, c = std::cos(ang), s = std::sin(ang);
        double acc = 0.0;
        for (const auto& a : nodes)
            for (const auto& b : nodes) {
                const Vec3 X = rotate(b.X, c, s), N = rotate(b.N, c, s);
                acc += a.w * b.w * norm(sub(a.X, X)) * dot(a.N, N);
            }
        per[k] = acc;
        if (k != 0 && n - k != k) per[n - k] = acc;
    }
    double total = 0.0;
    for (double v : per) total += v;
    return -0.25 * n * total;
}

double ball_energy(double m) {
    const double r = std::cbrt(3.0 * m / (4.0 * kPi));
    return 4.0 * kPi * r * r + coulomb_energy(BallRegion{r});
}

CriticalMass critical_mass() {
    CriticalMass cm;
    cm.closed_form = 5.0 * (std::cbrt(2.0) - 1.0) / (1.0 - std::pow(2.0, -2.0 / 3.0));
    auto g = [](double m) { return ball_energy(m) - 2.0 * ball_energy(0.5 * m); };
    double lo = 0.5, hi = 20.0;
    if (!(g(lo) < 0.0 && g(hi) > 0.0)) throw RootNotBracketed("E(m) - 2E(m/2) does not change sign on [0.5, 20]");
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
    cm.numeric = 0.5 * (a + b);
    return cm;
}

}  // namespace necklace

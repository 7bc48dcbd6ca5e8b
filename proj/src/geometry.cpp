#include "necklace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "necklace/errors.hpp"

namespace necklace {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Jet lift(const Jet& v, double g0, double g1, double g2) { return compose(v, g0, g1, g2); }

}  // namespace

std::string to_string(PatchKind kind) {
    switch (kind) {
        case PatchKind::StraightDelaunay: return "straight-delaunay";
        case PatchKind::Coiled: return "coiled";
        case PatchKind::Sphere: return "sphere";
        case PatchKind::Cylinder: return "cylinder";
    }
    return "unknown";
}

std::array<Jet, 2> SurfacePatch::meridian(double theta, double v) const {
    const Jet vv = Jet::variable(v, 1);
    const CurveJet c = curve->eval(v);
    Jet rho = lift(vv, c.r[0], c.r[1], c.r[2]);
    Jet Z = lift(vv, c.z[0], c.z[1], c.z[2]);
    if (h) {
        const Jet rp = lift(vv, c.r[1], c.r[2], c.r[3]);
        const Jet zp = lift(vv, c.z[1], c.z[2], c.z[3]);
        const Jet s = sqrt(rp * rp + zp * zp);
        const auto e = h->eval(theta, v);
        Jet hj(e[0]);
        hj.d = {e[1], e[2]};
        hj.h = {e[3], e[4], e[5]};
        const Jet hs = hj / s;
        rho = rho + hs * zp;
        Z = Z - hs * rp;
    }
    return {rho, Z};
}

Jet3 SurfacePatch::straight_position(double theta, double v) const {
    const Jet th = Jet::variable(theta, 0);
    const auto [rho, Z] = meridian(theta, v);
    return {rho * cos(th), rho * sin(th), Z};
}

Jet3 coil_map(const Jet3& y, double R) {
    const Jet ang = (1.0 / R) * y[2];
    const Jet rad = Jet(R) + y[1];
    return {y[0], rad * cos(ang), rad * sin(ang)};
}

std::array<double, 3> coil_point(const std::array<double, 3>& y, double R) {
    const double ang = y[2] / R, rad = R + y[1];
    return {y[0], rad * std::cos(ang), rad * std::sin(ang)};
}

Jet3 SurfacePatch::position(double theta, double v) const {
    Jet3 y = straight_position(theta, v);
    return coiled() ? coil_map(y, R) : y;
}

SurfacePatch make_straight(const DelaunayProfile& profile) {
    SurfacePatch p;
    p.kind = std::abs(profile.a - 0.5) < 1e-14 ? PatchKind::Cylinder : PatchKind::StraightDelaunay;
    p.curve = std::make_shared<AxialGeneratrix>(profile);
    p.a = profile.a;
    p.T = profile.T;
    return p;
}

SurfacePatch make_straight(const ConformalChart& chart, std::shared_ptr<const SymmetricField> h) {
    SurfacePatch p;
    p.kind = PatchKind::StraightDelaunay;
    p.curve = std::make_shared<ConformalGeneratrix>(chart);
    p.a = chart.a;
    p.T = chart.T;
    if (h && std::abs(h->tau() - chart.tau) > 1e-9 * chart.tau) throw GridMismatch("field and chart periods differ");
    p.h = std::move(h);
    return p;
}

SurfacePatch make_sphere(double radius) {
    SurfacePatch p;
    p.kind = PatchKind::Sphere;
    p.curve = std::make_shared<SphereGeneratrix>(radius);
    p.a = 0.0;
    return p;
}

SurfacePatch make_cylinder(double radius, double period) {
    SurfacePatch p;
    p.kind = PatchKind::Cylinder;
    p.T = period > 0.0 ? period : kPi;
    p.curve = std::make_shared<CylinderGeneratrix>(radius, p.T);
    p.a = radius;
    return p;
}

SurfacePatch coil_curve(GeneratrixPtr curve, double a, int n) {
    if (n < 3) throw DomainError("coiling needs n >= 3");
    SurfacePatch p;
    p.kind = PatchKind::Coiled;
    p.curve = std::move(curve);
    p.a = a;
    p.T = p.curve->axial_period();
    p.n = n;
    p.R = n * p.T / (2.0 * kPi);
    return p;
}

SurfacePatch build_coil(const DelaunayProfile& profile, int n) {
    SurfacePatch p = coil_curve(std::make_shared<AxialGeneratrix>(profile), profile.a, n);
    check_embedding(p);
    return p;
}

SurfacePatch build_coil(const ConformalChart& chart, int n, std::shared_ptr<const SymmetricField> h) {
    SurfacePatch p = coil_curve(std::make_shared<ConformalGeneratrix>(chart), chart.a, n);
    if (h && std::abs(h->tau() - chart.tau) > 1e-9 * chart.tau) throw GridMismatch("field and chart periods differ");
    p.h = std::move(h);
    check_embedding(p);
    return p;
}

void check_embedding(const SurfacePatch& patch) {
    const double P = patch.curve->period();
    if (P <= 0.0) return;
    const int nv = 64, nt = 32;
    double max_rho = 0.0;
    for (int j = 0; j < nv; ++j) {
        const double v = patch.curve->vmin() + P * j / nv;
        for (int i = 0; i < nt; ++i) {
            const double theta = 2.0 * kPi * i / nt;
            double hv = 0.0;
            if (patch.h) {
                hv = patch.h->eval(theta, v)[0];
                SurfacePatch base = patch;
                base.h = nullptr;
                base.R = 0.0;
                const auto ff = evaluate_forms(base, theta, v);
                // principal curvatures from H and |A|^2
                const double disc = std::sqrt(std::max(0.0, 2.0 * ff.norm_A2 - ff.H * ff.H));
                const double kmax = 0.5 * (std::abs(ff.H) + disc);
                if (1.0 - std::abs(hv) * kmax <= 0.0)
                    throw EmbeddingViolation("perturbation exceeds the normal-graph radius");
            }
            const auto y = patch.straight_position(theta, v);
            max_rho = std::max(max_rho, std::hypot(y[0].v, y[1].v));
        }
    }
    if (patch.coiled() && patch.R - max_rho <= 0.0) throw EmbeddingViolation("major radius below the profile radius");
}

FundamentalForms evaluate_forms(const SurfacePatch& patch, double theta, double v) {
    const Jet3 P = patch.position(theta, v);
    Vec3 Y1, Y2, y11, y12, y22;
    for (int k = 0; k < 3; ++k) {
        Y1[k] = P[k].d[0];
        Y2[k] = P[k].d[1];
        y11[k] = P[k].h[0];
        y12[k] = P[k].h[1];
        y22[k] = P[k].h[2];
    }
    FundamentalForms F;
    F.point = {P[0].v, P[1].v, P[2].v};
    F.g = {dot(Y1, Y1), dot(Y1, Y2), dot(Y2, Y2)};
    const double det = F.g[0] * F.g[2] - F.g[1] * F.g[1];
    if (!(det > 1e-300)) throw DegenerateMetric("metric determinant is not positive");
    F.area_element = std::sqrt(det);
    Vec3 nu = cross(Y1, Y2);
    const double nn = std::sqrt(dot(nu, nu));
    for (double& c : nu) c /= nn;
    F.normal = nu;
    F.L = {dot(nu, y11), dot(nu, y12), dot(nu, y22)};
    const double g11 = F.g[0], g12 = F.g[1], g22 = F.g[2];
    const double L11 = F.L[0], L12 = F.L[1], L22 = F.L[2];
    F.A = {(g22 * L11 - g12 * L12) / det, (g22 * L12 - g12 * L22) / det, (g11 * L12 - g12 * L11) / det,
           (g11 * L22 - g12 * L12) / det};
    F.H = -(F.A[0] + F.A[3]);
    F.norm_A2 = F.A[0] * F.A[0] + 2.0 * F.A[1] * F.A[2] + F.A[3] * F.A[3];
    return F;
}

double curvature_phi(double f, double fp, double fpp) {
    const double q = 1.0 + fp * fp;
    return (2.0 - fp * fp) * f * fpp / std::pow(q, 2.5) + (1.0 + 3.0 * fp * fp) / std::pow(q, 1.5);
}

ExpansionReport curvature_expansion_check(const DelaunayProfile& profile, const std::vector<int>& n_list,
                                          int n_theta, int n_axial) {
    ExpansionReport rep;
    auto curve = std::make_shared<AxialGeneratrix>(profile);
    const double T = profile.T;
    for (int n : n_list) {
        if (n < 8) throw DomainError("expansion check needs n >= 8");
        SurfacePatch p = coil_curve(curve, profile.a, n);
        ExpansionRow row;
        row.n = n;
        row.R = p.R;
        for (int j = 0; j < n_axial; ++j) {
            const double y3 = -0.5 * T + T * j / n_axial;
            const auto fj = curve->f(y3);
            const double phi = curvature_phi(fj[0], fj[1], fj[2]);
            for (int i = 0; i < n_theta; ++i) {
                const double theta = 2.0 * kPi * i / n_theta;
                const double H = evaluate_forms(p, theta, y3).H;
                row.max_error = std::max(row.max_error, std::abs(H - 2.0 - std::sin(theta) * phi / p.R));
            }
        }
        const auto f0 = curve->f(0.0);
        row.phi_exact = curvature_phi(f0[0], f0[1], f0[2]);
        double sxy = 0.0, sxx = 0.0;
        for (int i = 0; i < n_theta; ++i) {
            const double theta = 2.0 * kPi * i / n_theta;
            const double H = evaluate_forms(p, theta, 0.0).H;
            const double x = std::sin(theta);  // y2 / f
            sxy += x * (H - 2.0) * p.R;
            sxx += x * x;
        }
        row.phi_fit = sxy / sxx;
        rep.rows.push_back(row);
    }
    if (rep.rows.size() >= 2) {
        double mx = 0, my = 0;
        for (auto& r : rep.rows) mx += std::log(r.n), my += std::log(r.max_error);
        mx /= rep.rows.size();
        my /= rep.rows.size();
        double sxy = 0, sxx = 0;
        for (auto& r : rep.rows) {
            const double dx = std::log(r.n) - mx;
            sxy += dx * (std::log(r.max_error) - my);
            sxx += dx * dx;
        }
        rep.exponent = sxy / sxx;
    }
    return rep;
}

MeshStats Mesh::stats() const {
    MeshStats s;
    s.vertices = vertices.size();
    s.faces = faces.size();
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (const auto& f : faces) {
        for (int e = 0; e < 3; ++e) {
            std::size_t u = f[e], w = f[(e + 1) % 3];
            edges[{std::min(u, w), std::max(u, w)}]++;
        }
    }
    s.edges = edges.size();
    for (const auto& [k, c] : edges)
        if (c == 1) ++s.boundary_edges;
    return s;
}

Mesh triangulate(const SurfacePatch& patch, int n_theta, int n_axial) {
    if (n_theta < 8 || n_axial < 8) throw DomainError("mesh resolution must be at least (8, 8)");
    Mesh m;
    auto add_vertex = [&](double theta, double v) {
        const auto F = evaluate_forms(patch, theta, v);
        m.vertices.push_back(F.point);
        m.normals.push_back(F.normal);
    };
    auto add_face = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
        // orient counter-clockwise as seen from the outward normal
        const auto& p0 = m.vertices[i0];
        const auto& p1 = m.vertices[i1];
        const auto& p2 = m.vertices[i2];
        const Vec3 e1{p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
        const Vec3 e2{p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]};
        Vec3 nsum{0, 0, 0};
        for (std::size_t k : {i0, i1, i2})
            for (int c = 0; c < 3; ++c) nsum[c] += m.normals[k][c];
        if (dot(cross(e1, e2), nsum) >= 0.0) m.faces.push_back({i0, i1, i2});
        else m.faces.push_back({i0, i2, i1});
    };
    auto theta_at = [&](int i) { return 2.0 * kPi * i / n_theta; };

    if (patch.kind == PatchKind::Sphere) {
        const double v0 = patch.curve->vmin(), v1 = patch.curve->vmax();
        auto pole = [&](double v, double sign) {
            const CurveJet c = patch.curve->eval(v);
            m.vertices.push_back({0.0, 0.0, c.z[0]});
            m.normals.push_back({0.0, 0.0, sign});
        };
        pole(v0, -1.0);
        for (int j = 1; j <= n_axial; ++j) {
            const double v = v0 + (v1 - v0) * j / (n_axial + 1);
            for (int i = 0; i < n_theta; ++i) add_vertex(theta_at(i), v);
        }
        pole(v1, 1.0);
        auto idx = [&](int i, int j) { return 1 + std::size_t(j - 1) * n_theta + std::size_t(i % n_theta); };
        const std::size_t north = m.vertices.size() - 1;
        for (int i = 0; i < n_theta; ++i) add_face(0, idx(i + 1, 1), idx(i, 1));
        for (int j = 1; j < n_axial; ++j)
            for (int i = 0; i < n_theta; ++i) {
                add_face(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1));
                add_face(idx(i, j), idx(i + 1, j + 1), idx(i, j + 1));
            }
        for (int i = 0; i < n_theta; ++i) add_face(north, idx(i, n_axial), idx(i + 1, n_axial));
        return m;
    }

    const double P = patch.curve->period();
    const double v0 = patch.curve->vmin();
    const bool closed = patch.coiled();
    const int rows = closed ? n_axial : n_axial + 1;
    const double span = closed ? P * patch.n : P;
    for (int j = 0; j < rows; ++j) {
        const double v = v0 + span * j / n_axial;
        for (int i = 0; i < n_theta; ++i) add_vertex(theta_at(i), v);
    }
    auto idx = [&](int i, int j) { return std::size_t(j % rows) * n_theta + std::size_t(i % n_theta); };
    for (int j = 0; j < n_axial; ++j)
        for (int i = 0; i < n_theta; ++i) {
            add_face(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1));
            add_face(idx(i, j), idx(i + 1, j + 1), idx(i, j + 1));
        }
    return m;
}

void write_obj(const Mesh& mesh, const std::string& path, const std::vector<std::string>& comments) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw IoError("cannot open " + path);
    for (const auto& c : comments) std::fprintf(fp, "# %s\n", c.c_str());
    for (const auto& v : mesh.vertices) std::fprintf(fp, "v %.12g %.12g %.12g\n", v[0], v[1], v[2]);
    for (const auto& n : mesh.normals) std::fprintf(fp, "vn %.12g %.12g %.12g\n", n[0], n[1], n[2]);
    for (const auto& f : mesh.faces)
        std::fprintf(fp, "f %zu//%zu %zu//%zu %zu//%zu\n", f[0] + 1, f[0] + 1, f[1] + 1, f[1] + 1, f[2] + 1, f[2] + 1);
    if (std::fclose(fp) != 0) throw IoError("failed writing " + path);
}

void export_mesh(const SurfacePatch& patch, int n_theta, int n_axial, const std::string& path) {
    write_obj(triangulate(patch, n_theta, n_axial), path);
}

}  // namespace necklace

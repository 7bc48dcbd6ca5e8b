#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "necklace/errors.hpp"
#include "necklace/generatrix.hpp"
#include "necklace/geometry.hpp"
#include "necklace/profile.hpp"

using namespace necklace;

TEST_CASE("straight unduloid has mean curvature 2") {
    for (double a : {0.1, 0.3, 0.45}) {
        const SurfacePatch p = make_straight(solve_profile(a));
        double err = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                err = std::max(err, std::abs(evaluate_forms(p, 2 * std::numbers::pi * i / 16, -p.T / 2 + p.T * j / 16).H - 2.0));
        CHECK(err < 1e-6);
    }
}

TEST_CASE("sphere curvature and normal") {
    const SurfacePatch s = make_sphere(2.0);
    const auto F = evaluate_forms(s, 0.7, 1.1);
    CHECK(F.H == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(F.norm_A2 == doctest::Approx(0.5).epsilon(1e-12));
    const double r = std::hypot(F.point[0], F.point[1], F.point[2]);
    for (int c = 0; c < 3; ++c) CHECK(F.normal[c] == doctest::Approx(F.point[c] / r).epsilon(1e-12));
}

TEST_CASE("coiled cylinder is a torus") {
    // tube radius 1/2 around a circle of radius R: H = 2 + sin(theta) / (R + sin(theta) / 2)
    const int n = 6;
    const SurfacePatch t = coil_curve(std::make_shared<CylinderGeneratrix>(0.5, std::numbers::pi), 0.5, n);
    for (double theta : {0.0, 0.9, 2.5, -1.3}) {
        const double H = evaluate_forms(t, theta, 0.4).H;
        CHECK(H == doctest::Approx(2.0 + std::sin(theta) / (t.R + 0.5 * std::sin(theta))).epsilon(1e-10));
    }
}

TEST_CASE("conformal and axial parametrisations describe the same surface") {
    const ConformalChart c = build_chart(0.3, kDefaultTol, 1024);
    const SurfacePatch p = make_straight(c);
    double err = 0.0;
    for (int j = 0; j < 20; ++j) err = std::max(err, std::abs(evaluate_forms(p, 0.3, -c.tau + 0.1 * j * c.tau).H - 2.0));
    CHECK(err < 1e-8);
}

TEST_CASE("curvature expansion of the coil") {
    const DelaunayProfile prof = solve_profile(0.3);
    const ExpansionReport r = curvature_expansion_check(prof, {8, 16, 32, 64});
    CHECK(r.exponent < -1.8);
    const auto& row = r.rows[2];
    CHECK(std::abs(row.phi_fit / row.phi_exact - 1.0) < 0.05);
}

TEST_CASE("embedding guard") {
    const ConformalChart c = build_chart(0.3, kDefaultTol, 256);
    auto big = std::make_shared<SymmetricField>(4, 64, c.tau);
    big->set_mode(0, std::vector<double>(64, -0.35));
    CHECK_THROWS_AS(build_coil(c, 16, big), EmbeddingViolation);
    CHECK_THROWS_AS(build_coil(solve_profile(0.3), 1), DomainError);
}

TEST_CASE("meshes are closed surfaces of the right topology") {
    const Mesh sphere = triangulate(make_sphere(1.0), 16, 16);
    CHECK(sphere.stats().euler() == 2);
    CHECK(sphere.stats().boundary_edges == 0);
    const Mesh coil = triangulate(build_coil(solve_profile(0.3), 8), 16, 16);
    CHECK(coil.stats().euler() == 0);
    CHECK(coil.stats().boundary_edges == 0);
    // outward orientation: signed volume of the closed mesh is positive
    double vol = 0.0;
    for (const auto& f : sphere.faces) {
        const auto& a = sphere.vertices[f[0]];
        const auto& b = sphere.vertices[f[1]];
        const auto& c = sphere.vertices[f[2]];
        vol += (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0;
    }
    CHECK(vol > 0.9 * 4.0 * std::numbers::pi / 3.0);
    CHECK(vol < 4.0 * std::numbers::pi / 3.0);

    const std::string path = "necklace_test_mesh.obj";
    write_obj(sphere, path, {"test header"});
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "# test header");
    std::remove(path.c_str());
}

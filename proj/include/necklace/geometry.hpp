#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "necklace/field.hpp"
#include "necklace/generatrix.hpp"
#include "necklace/jet.hpp"
#include "necklace/profile.hpp"

namespace necklace {

enum class PatchKind { StraightDelaunay, Coiled, Sphere, Cylinder };

std::string to_string(PatchKind kind);

// Surface of revolution (optionally perturbed along its normal and bent around a circle).
// Parameters are omega = (theta, v), v being the generatrix parameter.
struct SurfacePatch {
    PatchKind kind = PatchKind::StraightDelaunay;
    GeneratrixPtr curve;
    double a = 0.5;
    double T = 0.0;  // axial period (0 for the sphere)
    int n = 0;       // blocks around the circle (coiled only)
    double R = 0.0;  // major radius; 0 means no coiling
    std::shared_ptr<const SymmetricField> h;

    // radius rho and axial coordinate Z of the normal-graph point, as jets in (theta, v)
    std::array<Jet, 2> meridian(double theta, double v) const;
    // normal-graph point before coiling
    Jet3 straight_position(double theta, double v) const;
    // final position in R^3
    Jet3 position(double theta, double v) const;
    bool coiled() const { return R > 0.0; }
};

struct FundamentalForms {
    std::array<double, 3> g{};  // g11, g12, g22
    std::array<double, 3> L{};  // nu . y_ij
    std::array<double, 4> A{};  // g^{-1} L, row-major
    double H = 0.0;             // -trace(A)
    double norm_A2 = 0.0;       // trace(A^2)
    std::array<double, 3> point{};
    std::array<double, 3> normal{};
    double area_element = 0.0;  // sqrt(det g)
};

SurfacePatch make_straight(const DelaunayProfile& profile);
SurfacePatch make_straight(const ConformalChart& chart, std::shared_ptr<const SymmetricField> h = nullptr);
SurfacePatch make_sphere(double radius = 1.0);
SurfacePatch make_cylinder(double radius = 0.5, double period = 0.0);

// Coiled patch from the axial profile (unperturbed) or from an isothermal chart with optional field h.
SurfacePatch build_coil(const DelaunayProfile& profile, int n);
SurfacePatch build_coil(const ConformalChart& chart, int n, std::shared_ptr<const SymmetricField> h = nullptr);
// Bend an arbitrary periodic generatrix into n blocks.
SurfacePatch coil_curve(GeneratrixPtr curve, double a, int n);

// Throws EmbeddingViolation when the perturbation breaks the normal-graph condition
// 1 - |h| kappa_max > 0 or when R does not exceed the largest perturbed radius.
void check_embedding(const SurfacePatch& patch);

FundamentalForms evaluate_forms(const SurfacePatch& patch, double theta, double v);

// Coil map X(y) as jets.
Jet3 coil_map(const Jet3& y, double R);
// Plain coordinates of X(y).
std::array<double, 3> coil_point(const std::array<double, 3>& y, double R);

// Phi(y3) of the first-order curvature correction.
double curvature_phi(double f, double fp, double fpp);

struct ExpansionRow {
    int n = 0;
    double R = 0.0;
    double max_error = 0.0;  // max |H - 2 - sin(theta) Phi / R|
    double phi_fit = 0.0;    // fitted (H - 2) R coefficient at y3 = 0
    double phi_exact = 0.0;  // Phi(0)
};

struct ExpansionReport {
    std::vector<ExpansionRow> rows;
    double exponent = 0.0;  // least-squares slope of log max_error vs log n
};

ExpansionReport curvature_expansion_check(const DelaunayProfile& profile, const std::vector<int>& n_list,
                                          int n_theta = 32, int n_axial = 32);

struct MeshStats {
    std::size_t vertices = 0, faces = 0, edges = 0, boundary_edges = 0;
    long euler() const { return long(vertices) - long(edges) + long(faces); }
};

struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<double, 3>> normals;
    std::vector<std::array<std::size_t, 3>> faces;
    MeshStats stats() const;
};

// Triangulates the patch: full necklace for coiled patches, one period (open tube) for straight
// and cylinder patches, the closed surface for spheres.
Mesh triangulate(const SurfacePatch& patch, int n_theta, int n_axial);
// comments are written as leading "# " lines
void write_obj(const Mesh& mesh, const std::string& path, const std::vector<std::string>& comments = {});
void export_mesh(const SurfacePatch& patch, int n_theta, int n_axial, const std::string& path);

}  // namespace necklace

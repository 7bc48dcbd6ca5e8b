#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "necklace/field.hpp"
#include "necklace/geometry.hpp"
#include "necklace/profile.hpp"

namespace necklace {

struct BlockResolution {
    int n_r = 24;
    int n_phi = 32;
    int n_z = 48;
    BlockResolution refined() const;
};

// Resolution of the desingularised self-block (boundary integral with a partition of unity).
struct SelfResolution {
    int n_theta = 48;      // lateral far part, periodic trapezoid
    int n_v = 64;          // lateral far part, Gauss in the generatrix parameter
    int n_rho = 24;        // polar near part, radial Gauss
    int n_alpha = 32;      // polar near part, angular trapezoid
    int n_cap_r = 16;      // caps, radial Gauss
    int n_cap_theta = 32;  // caps, angular trapezoid
    double rho_fraction = 0.5;
    SelfResolution refined() const;
};

struct NonlocalOptions {
    BlockResolution block;                   // blocks with |k| <= near_blocks
    BlockResolution far{8, 16, 24};          // remaining blocks
    int near_blocks = 2;
    SelfResolution self;
    bool error_estimate = false;  // one refinement step for an a-posteriori estimate
    double tol = 0.0;             // when > 0, QuadratureDivergence if the estimate exceeds tol * |value|
    int threads = 1;

    static NonlocalOptions desk();  // reduced resolution used inside iterations
};

// Tensor volume nodes of one period window of a (possibly perturbed) solid of revolution in straight
// coordinates: parameters (r_hat, theta, v), v in [v_center - P/2, v_center + P/2].
struct BlockQuadrature {
    BlockResolution resolution;
    double v_center = 0.0;
    std::vector<std::array<double, 3>> x;  // (x1, x2, x3) with x3 the absolute axial coordinate
    std::vector<double> w;                 // r_hat rho^2 Z_v times the rule weights

    static BlockQuadrature build(const SurfacePatch& patch, double v_center, const BlockResolution& res);
    double volume() const;
    // volume of the coiled block, weights times (1 + x2 / R)
    double coiled_volume(double R) const;
};

struct CoulombResult {
    double value = 0.0;
    int n = 0;
    std::array<double, 2> y{};      // (theta, v)
    std::vector<double> breakdown;  // I_k, k = 0..n-1
    double error_estimate = 0.0;
};

// Newtonian potential of the coiled solid bounded by `patch` (kind coiled, optional h) at surface
// points given by their parameters (theta, v).
class CoilPotential {
public:
    CoilPotential(SurfacePatch patch, NonlocalOptions options = {});
    const SurfacePatch& patch() const { return patch_; }
    CoulombResult at(double theta, double v) const;
    // values at several theta sharing the same v (shares the window quadrature)
    std::vector<double> row(const std::vector<double>& thetas, double v) const;

private:
    CoulombResult evaluate(double theta, double v, const NonlocalOptions& opt) const;
    std::vector<CoulombResult> evaluate_row(const std::vector<double>& thetas, double v,
                                            const NonlocalOptions& opt) const;
    SurfacePatch patch_;
    NonlocalOptions options_;
};

CoulombResult potential_coil(const DelaunayProfile& profile, int n, double theta, double y3,
                             const NonlocalOptions& options = {});
CoulombResult potential_perturbed(const ConformalChart& chart, int n, std::shared_ptr<const SymmetricField> h,
                                  double theta, double t, const NonlocalOptions& options = {});

// First-order change of the potential at the moving point X(y_h) under h:
// int over the coil surface of [h(x) (w_x . n_x) - h(y) (w_y . n_x)] / |x - y| dS with w = DX nu.
double potential_linearized(const ConformalChart& chart, int n, const SymmetricField& h, double theta, double t,
                            const NonlocalOptions& options = {});

// Newtonian potential of a closed solid of revolution (no coiling), e.g. a ball, at a boundary point.
double potential_closed(const SurfacePatch& patch, double theta, double v, const SelfResolution& res = {});

// Ball of radius r: potential at distance s from the centre by the radial shell integral.
double ball_potential(double s, double radius);

struct BallRegion {
    double radius = 1.0;
};
struct CoilRegion {
    DelaunayProfile profile;
    int n = 8;
    int n_theta = 32;
    int n_v = 48;
};

double coulomb_energy(const BallRegion& ball);
double coulomb_energy(const CoilRegion& coil);

// Perimeter plus Coulomb energy of the ball of volume m.
double ball_energy(double m);

struct CriticalMass {
    double numeric = 0.0;
    double closed_form = 0.0;
};
CriticalMass critical_mass();

}  // namespace necklace

#pragma once
// Radial rearrangement of a scalar potential and the level diagnostics built
// on it: the reconstructed nonlinearity, the M/A/H functionals in both the
// rearrangement and the surface form, the Pohozaev balance, and integral
// curve lengths.

#include <functional>

#include "glv/grid.hpp"
#include "glv/levelset.hpp"
#include "glv/math_util.hpp"

namespace glv {

struct MultipleCriticalValues : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadialRearrangement {
    Vec2 center{0, 0};  ///< peak of phi, quadratically refined
    double t0 = 0.0;    ///< phi(center)
    std::vector<double> t;    ///< sampled levels, descending
    std::vector<double> rho;  ///< equal-area radii sqrt(area/pi), increasing
    std::vector<LevelSet> levels;
    MonotoneCubic phi_star;  ///< r -> phi*(r), anchored at phi*(0) = t0
};

/// Level sweep at equal-area quantiles of the node-count distribution of phi,
/// capped at `area_cap` of the in-mask area and refined near the peak by
/// geometrically shrinking top levels.  Throws MultipleCriticalValues when the
/// area map is not strictly monotone or the top level splits into several
/// loops.  Levels whose curves leave the mask are dropped from the sweep;
/// IncompleteLoop is thrown only when fewer than four levels survive.
RadialRearrangement sweep_levels(const ScalarField& phi, int n_levels, double area_cap = 0.8);

struct NonlinearityG {
    std::vector<double> t;             ///< ascending
    std::vector<double> theta;         ///< arclength-weighted level means
    std::vector<double> theta_spread;  ///< arclength-weighted std deviations
    std::vector<double> g;             ///< cumulative integral of theta
    std::vector<double> G;             ///< primitive of g, G(t_min) = 0
    bool spread_ok = true;  ///< level-constancy check; false withholds the verdict

    double theta_at(double tv) const { return theta_spline(clamp(tv)); }
    double g_at(double tv) const { return g_spline(clamp(tv)); }
    double G_at(double tv) const { return G_spline(clamp(tv)); }

    MonotoneCubic theta_spline, g_spline, G_spline;

private:
    // The splines share one t range; outside it the end value is held.
    double clamp(double tv) const {
        const double lo = theta_spline.x_min(), hi = theta_spline.x_max();
        return tv < lo ? lo : (tv > hi ? hi : tv);
    }
};

/// Per-level statistics of weight(x) * (1 - |grad phi|^2) along the level
/// curves, integrated into g and its primitive G by fine quadrature of the
/// interpolated theta.  Empty weight means 1; in that case theta is anchored
/// to 1 at the peak (the gradient vanishes there).  g is seeded at t_min with
/// the outermost-level Laplacian of -phi (normal derivative of |grad phi|
/// plus |grad phi| / rho), which realizes the far-field t g(t) -> -1 limit on
/// the plane and the nonzero rim value on disks.
NonlinearityG reconstruct_nonlinearity(const ScalarField& phi, const RadialRearrangement& rr,
                                       std::function<double(Vec2)> weight = {});

struct HRecord {
    double M = 0, A = 0, H = 0;
};

/// M, A, H per sampled level by fine quadrature of g(phi*) and G(phi*) in r.
/// H uses the derivative-free reduction H = M^2/2 + 4 pi^2 r^2 G(phi*(r))
/// - 4 pi A, exact for the quadratured A; H(0) = 0 holds identically.
std::vector<HRecord> compute_H_rearranged(const RadialRearrangement& rr,
                                          const NonlinearityG& ng);

/// Surface form of H at one level:
/// (int |grad phi| dsigma)^2 / 2 - pi int <x - xc, nu> |grad phi|^2 dsigma.
double compute_H_surface(const ScalarField& phi, const LevelSet& ls, Vec2 xc);

struct PohozaevBalance {
    double residual = 0;  ///< |boundary term - domain term|
    double leading = 0;   ///< larger of the two magnitudes, for relative error
};

/// Pohozaev balance at one level.  The constant-G boundary term is folded
/// into the domain integral, so the comparison is
/// | 1/2 int <x-xc,nu> |grad phi|^2 dsigma  -  2 int (G(phi) - G(t)) dx |.
PohozaevBalance pohozaev_residual(const ScalarField& phi, const NonlinearityG& ng,
                                  const LevelSet& ls, Vec2 xc);

struct CurveLengths {
    double traced = 0;      ///< arclength of the steepest-descent curve
    double theta_form = 0;  ///< int_t^{t0} dxi / sqrt(1 - Theta(xi))
    bool theta_valid = true;  ///< false when Theta >= 1 below the peak
};

/// Length of the integral curve of -grad phi from the peak down to level t,
/// against its Theta-form prediction.  The peak singularity of the latter is
/// removed by the substitution sigma = sqrt(t0 - xi).
CurveLengths integral_curve_length(const ScalarField& phi, const RadialRearrangement& rr,
                                   const NonlinearityG& ng, double t);

}  // namespace glv

#pragma once
// Operations on 2-D complex fields: synthesis from radial profiles, the GL
// residual, nonlinear relaxation, winding number, zeros, curl, the optimal
// target-space rotation, the scalar potential of a curl-free field, and the
// local zero-structure fit.

#include <complex>
#include <optional>

#include "glv/grid.hpp"
#include "glv/radial.hpp"

namespace glv {

/// u(x) = e^{i d theta} f(|x - origin|) with cubic interpolation of the
/// profile; boundary nodes snap to exact e^{i d theta}.  Negative d uses the
/// conjugated phase.  `origin` offsets the vortex center (phase and profile
/// both taken about it; boundary snap only when origin is the grid center).
Field2D synthesize_field(const RadialProfile& p, GeometryPtr geom, int d_signed = 0,
                         Vec2 origin = {0, 0});

/// Per-node |−Δ_h u − u(1−|u|²)| with the 5-point Laplacian; zero on
/// boundary and exterior nodes.
ScalarField gl_residual(const Field2D& u);

double max_norm(const ScalarField& f);

struct RelaxResult {
    Field2D u;
    int sweeps = 0;
    double residual = 0.0;
    bool converged = false;
    bool diverged = false;
};

/// Nonlinear SOR sweeps of the discrete GL system; boundary nodes are never
/// updated.  Stops when the gl_residual max-norm drops below tol.
RelaxResult relax_solve(const Field2D& u0, int max_iter, double tol, double omega = 1.9);

struct DegreeIllDefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Winding number of u along the circle of given radius about the grid
/// center: wrapped phase increments over 8*ceil(radius/h) samples.
int degree(const Field2D& u, double radius);

struct ZeroFindResult {
    std::vector<Vec2> zeros;
    int discarded_boundary = 0;  ///< components touching the mask edge
    bool under_resolved = false; ///< no node fell below the threshold
};

/// Connected components of {|u| < thresh}, reduced to weighted centroids and
/// refined by Newton steps on (re, im).
ZeroFindResult find_zeros(const Field2D& u, double thresh = 0.1);

/// Centered-difference curl of u read as a real vector field (u1, u2).
ScalarField curl_field(const Field2D& u);

/// Divergence, same stencil as curl_field.
ScalarField div_field(const Field2D& u);

/// Apply the target-space rotation R_beta.
Field2D rotate(const Field2D& u, double beta);

/// Angle beta in [0, 2 pi) minimizing ||curl(R_beta u)||_2, in closed form
/// (the objective is quadratic in cos/sin).  Of the two antipodal minima the
/// one with outward mean radial component is returned.
double best_rotation(const Field2D& u);

struct NotCurlFree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PotentialNormalization {
    zero_at_center,  ///< phi = 0 at the integration start (vortex convention phi ~ -|x|)
    inf_zero,        ///< inf phi = 0 (disk problems)
};

/// Scalar potential with -sign * grad(phi) = u, by path integration from
/// `start` with horizontal-first / vertical-first averaging.  Throws
/// NotCurlFree when the reconstruction is path dependent beyond tolerance.
ScalarField potential(const Field2D& u, int sign, Vec2 start,
                      PotentialNormalization norm = PotentialNormalization::zero_at_center);

struct ZeroFit {
    Vec2 location{0, 0};
    int degree_est = 0;
    std::complex<double> a1, a2;
    double residual = 0.0;       ///< relative L2 misfit
    bool conjugate_dominant = false;  ///< |a2| >= |a1| (negative-degree structure)
};

/// Least-squares fit of u near x0 to a1 z^m + a2 conj(z)^m over m = 1..6.
ZeroFit local_zero_fit(const Field2D& u, Vec2 x0, double fit_radius);

}  // namespace glv

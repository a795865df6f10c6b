#pragma once
// Degree reduction by the substitution v(z) = u(z^{1/d}): a degree-d field on
// the disk of radius R becomes a degree-1 field on the disk of radius R^d
// satisfying the weighted equation -lap v = d^-2 r^(-2/d*) v (1-|v|^2) with
// 1/d* = 1 - 1/d.

#include "glv/field_ops.hpp"
#include "glv/rearrange.hpp"

namespace glv {

struct NotLiftable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LiftedField {
    Field2D v;                  ///< degree-1 field on the disk of radius R^d
    int d = 1;                  ///< original degree
    double two_over_dstar = 0;  ///< weight exponent 2/d* = 2 (1 - 1/d)
    GeometryPtr source_geom;
    double branch_check = 0;  ///< max |u(w) - u(w e^{2 pi i / d})| across the cut
};

/// Pullback-resample u through the principal branch of z^{1/d}.  Requires
/// degree d along the half-radius circle and a single zero near the origin;
/// throws NotLiftable when the phase fails to close across the branch cut,
/// which the ansatz e^{i d theta} f(r) guarantees for genuine solutions.
LiftedField lift(const Field2D& u, int d);

/// Weight of the lifted equation at point p, d^-2 |p|^(-2/d*).
double lifted_weight(const LiftedField& lf, Vec2 p);

/// Per-node |-lap_h v - d^-2 r^(-2/d*) v (1-|v|^2)|; zero on boundary and
/// exterior nodes and within r < 3h of the origin, where v is only C^{1,1/d}
/// and the stencil loses its order.
ScalarField lifted_residual(const LiftedField& lf);

struct KappaConstancy {
    ScalarField phi;  ///< potential of the rotated lifted field, inf = 0
    RadialRearrangement rr;
    NonlinearityG ng;  ///< theta holds the kappa level means
    double max_relative_spread = 0;
};

/// Rotate the lifted field onto its curl-free representative, extract the
/// potential and measure kappa = d^-2 r^(-2/d*) (1 - |grad phi|^2) along the
/// level curves; kappa constant on levels is the scalar-reduction test.
KappaConstancy kappa_constancy(const LiftedField& lf, int n_levels = 24);

}  // namespace glv

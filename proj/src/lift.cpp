#include "glv/lift.hpp"

#include <cmath>
#include <numbers>

namespace glv {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

LiftedField lift(const Field2D& u, int d) {
    const GridGeometry& g = *u.geom;
    if (d < 1) throw std::invalid_argument("lift: degree must be positive");
    if (degree(u, 0.5 * g.R) != d)
        throw std::invalid_argument("lift: field does not have the requested degree");
    {
        auto zr = find_zeros(u);
        if (zr.zeros.size() != 1 || norm(zr.zeros[0] - g.center) > 2 * g.h)
            throw std::invalid_argument("lift: expected a single zero at the origin");
    }

    // Extend u by e^{i d theta} just outside its boundary so interpolation
    // cells that straddle the rim stay usable.
    std::vector<double> ext_re(u.re), ext_im(u.im);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (g.inside(i, j)) continue;
            const Vec2 p = g.node(i, j) - g.center;
            const double r = norm(p);
            if (r > g.R + 3 * g.h) continue;
            const double a = d * std::atan2(p[1], p[0]);
            ext_re[g.idx(i, j)] = std::cos(a);
            ext_im[g.idx(i, j)] = std::sin(a);
        }
    auto sample = [&](Vec2 w) {
        return std::complex<double>(bilinear(g, u.re, w, &ext_re),
                                    bilinear(g, u.im, w, &ext_im));
    };

    LiftedField lf;
    lf.d = d;
    lf.two_over_dstar = 2.0 * (1.0 - 1.0 / d);
    lf.source_geom = u.geom;

    // Branch closure: the two preimages of a point on the cut must agree.
    for (double r : {0.25 * g.R, 0.5 * g.R, 0.75 * g.R, g.R - 2 * g.h}) {
        const std::complex<double> a = sample(g.center + Vec2{r, 0.0});
        const std::complex<double> b =
            sample(g.center + Vec2{r * std::cos(two_pi / d), r * std::sin(two_pi / d)});
        lf.branch_check = std::max(lf.branch_check, std::abs(a - b));
    }
    if (lf.branch_check > 0.05)
        throw NotLiftable("lift: field is not single-valued under z^{1/d}");

    const double Rv = std::pow(g.R, d);
    auto tg = GridGeometry::disk(Rv, g.n, {0.0, 0.0});
    lf.v = Field2D(tg, 1);
    for (int j = 0; j < tg->n; ++j)
        for (int i = 0; i < tg->n; ++i) {
            if (!tg->inside(i, j)) continue;
            const Vec2 z = tg->node(i, j);
            const double r = norm(z);
            const int k = tg->idx(i, j);
            if (tg->at(i, j) == NodeClass::boundary) {
                lf.v.re[k] = z[0] / r;
                lf.v.im[k] = z[1] / r;
                continue;
            }
            if (r < 1e-14) continue;  // v(0) = 0
            double a = std::atan2(z[1], z[0]);
            if (a < 0) a += two_pi;  // principal branch, theta/d in [0, 2 pi/d)
            const double rw = std::pow(r, 1.0 / d);
            const std::complex<double> val =
                sample(g.center + Vec2{rw * std::cos(a / d), rw * std::sin(a / d)});
            lf.v.re[k] = val.real();
            lf.v.im[k] = val.imag();
        }
    return lf;
}

double lifted_weight(const LiftedField& lf, Vec2 p) {
    if (lf.d == 1) return 1.0;
    const double r = std::max(norm(p), 0.5 * lf.v.geom->h);
    return std::pow(r, -lf.two_over_dstar) / double(lf.d * lf.d);
}

ScalarField lifted_residual(const LiftedField& lf) {
    const GridGeometry& g = *lf.v.geom;
    ScalarField res(lf.v.geom);
    const double h2 = g.h * g.h;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (g.at(i, j) != NodeClass::interior) continue;
            if (!g.inside(i - 1, j) || !g.inside(i + 1, j) || !g.inside(i, j - 1) ||
                !g.inside(i, j + 1))
                continue;
            const Vec2 p = g.node(i, j);
            if (norm(p) < 3 * g.h) continue;  // only C^{1,1/d} at the origin
            const double c = lifted_weight(lf, p);
            const int k = g.idx(i, j);
            const double m2 = lf.v.re[k] * lf.v.re[k] + lf.v.im[k] * lf.v.im[k];
            auto comp = [&](const std::vector<double>& f) {
                const double lap = (f[g.idx(i - 1, j)] + f[g.idx(i + 1, j)] +
                                    f[g.idx(i, j - 1)] + f[g.idx(i, j + 1)] - 4 * f[k]) /
                                   h2;
                return -lap - c * f[k] * (1.0 - m2);
            };
            res.at(i, j) = std::hypot(comp(lf.v.re), comp(lf.v.im));
        }
    return res;
}

KappaConstancy kappa_constancy(const LiftedField& lf, int n_levels) {
    const double beta = best_rotation(lf.v);
    Field2D vr = rotate(lf.v, beta);
    ScalarField phi =
        potential(vr, +1, lf.v.geom->center, PotentialNormalization::inf_zero);
    RadialRearrangement rr = sweep_levels(phi, n_levels);
    NonlinearityG ng = reconstruct_nonlinearity(
        phi, rr, [&lf](Vec2 p) { return lifted_weight(lf, p); });
    double worst = 0;
    for (std::size_t k = 0; k < ng.t.size(); ++k)
        if (ng.theta[k] > 0)
            worst = std::max(worst, ng.theta_spread[k] / ng.theta[k]);
    return {std::move(phi), std::move(rr), std::move(ng), worst};
}

}  // namespace glv

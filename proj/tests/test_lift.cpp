#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glv/lift.hpp"

using namespace glv;

namespace {

Field2D disk_vortex(int d, double R, int n) {
    const RadialProfile p = solve_disk_profile(d, R, 2000);
    return synthesize_field(p, GridGeometry::disk(R, n), d);
}

}  // namespace

TEST_CASE("degree-1 lift reproduces the field") {
    const Field2D u = disk_vortex(1, 5.0, 129);
    const LiftedField lf = lift(u, 1);
    CHECK(lf.two_over_dstar == 0.0);
    CHECK(lf.v.geom->R == doctest::Approx(5.0));
    const GridGeometry& g = *u.geom;
    double worst = 0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const int k = g.idx(i, j);
            worst = std::max(worst, std::hypot(u.re[k] - lf.v.re[k], u.im[k] - lf.v.im[k]));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("degree-2 lift: target disk, winding one, closed branch") {
    const Field2D u = disk_vortex(2, 3.0, 257);
    const LiftedField lf = lift(u, 2);
    CHECK(lf.v.geom->R == doctest::Approx(9.0));
    CHECK(lf.two_over_dstar == doctest::Approx(1.0));
    CHECK(lf.branch_check < 1e-2);
    CHECK(degree(lf.v, 4.5) == 1);
    // modulus is transported: |v|(z) = F(|z|^{1/2})
    const RadialProfile p = solve_disk_profile(2, 3.0, 2000);
    const GridGeometry& tg = *lf.v.geom;
    for (double r : {2.0, 4.0, 6.0, 8.0}) {
        const double rv = lf.v.modulus(int(std::round((r - tg.x(0)) / tg.h)),
                                       (tg.n - 1) / 2);
        const double rw = std::sqrt(r);
        const std::size_t idx = std::size_t(rw / p.spacing());
        CHECK(rv == doctest::Approx(p.f[idx]).epsilon(0.02));
    }
}

TEST_CASE("weight of the reduced equation") {
    const Field2D u = disk_vortex(2, 3.0, 129);
    const LiftedField lf = lift(u, 2);
    CHECK(lifted_weight(lf, {4.0, 0.0}) == doctest::Approx(0.25 / 4.0));
    CHECK(lifted_weight(lf, {0.0, 0.25}) == doctest::Approx(0.25 / 0.25));
    const Field2D u1 = disk_vortex(1, 3.0, 129);
    const LiftedField lf1 = lift(u1, 1);
    CHECK(lifted_weight(lf1, {1.7, 0.3}) == 1.0);
}

TEST_CASE("reduced-equation residual stays bounded away from the origin") {
    const Field2D u = disk_vortex(2, 5.0, 257);
    const LiftedField lf = lift(u, 2);
    const ScalarField res = lifted_residual(lf);
    CHECK(max_norm(res) < 1.0);
}

TEST_CASE("level constancy of the weighted nonlinearity after lifting") {
    const Field2D u = disk_vortex(2, 5.0, 257);
    const LiftedField lf = lift(u, 2);
    const KappaConstancy kc = kappa_constancy(lf, 20);
    CHECK(kc.max_relative_spread < 0.05);
    for (std::size_t k = 1; k < kc.ng.g.size(); ++k) {
        CHECK(kc.ng.g[k] >= kc.ng.g[k - 1] - 1e-12);
        CHECK(kc.ng.g[k] >= -1e-12);
    }
}

TEST_CASE("a modulus wobble across the branch cut is rejected") {
    Field2D u = disk_vortex(2, 3.0, 193);
    const GridGeometry& g = *u.geom;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const Vec2 p = g.node(i, j);
            const double fac = 1.0 + 0.3 * std::cos(std::atan2(p[1], p[0]));
            const int k = g.idx(i, j);
            u.re[k] *= fac;
            u.im[k] *= fac;
        }
    CHECK_THROWS_AS(lift(u, 2), NotLiftable);
}

TEST_CASE("wrong degree request is refused") {
    const Field2D u = disk_vortex(1, 5.0, 129);
    CHECK_THROWS_AS(lift(u, 2), std::invalid_argument);
}

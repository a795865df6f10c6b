#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "glv/field_ops.hpp"

using namespace glv;

namespace {

Field2D vortex_field(int d, double R = 20.0, int n = 257) {
    const RadialProfile p = solve_profile(std::abs(d), std::max(25.0, 10.0 * std::abs(d)) + R, 4000);
    return synthesize_field(p, GridGeometry::disk(R, n), d);
}

/// Analytic curl-free field u = -grad(phi) for phi = -(a x^2 + b y^2) / 2.
Field2D quadratic_gradient_field(double a, double b, double R, int n) {
    auto geom = GridGeometry::disk(R, n);
    Field2D u(geom, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (!geom->inside(i, j)) continue;
            const Vec2 p = geom->node(i, j);
            const int k = geom->idx(i, j);
            u.re[k] = a * p[0];
            u.im[k] = b * p[1];
        }
    return u;
}

}  // namespace

TEST_CASE("winding number of synthesized vortices") {
    for (int d : {-2, -1, 1, 2, 3}) {
        const Field2D u = vortex_field(d, 15.0, 193);
        CHECK(degree(u, 7.5) == d);
    }
}

TEST_CASE("degree is refused where the modulus is small") {
    const Field2D u = vortex_field(1, 15.0, 193);
    CHECK_THROWS_AS(degree(u, 2 * u.geom->h), DegreeIllDefined);
}

TEST_CASE("curl stencil against an analytic rotational field") {
    auto geom = GridGeometry::disk(5.0, 129);
    Field2D u(geom, 0);
    for (int j = 0; j < geom->n; ++j)
        for (int i = 0; i < geom->n; ++i) {
            if (!geom->inside(i, j)) continue;
            const Vec2 p = geom->node(i, j);
            const int k = geom->idx(i, j);
            u.re[k] = -0.5 * p[1];  // curl = d(u2)/dx - d(u1)/dy = 1 exactly
            u.im[k] = 0.5 * p[0];
        }
    const ScalarField c = curl_field(u);
    for (int j = 2; j < geom->n - 2; ++j)
        for (int i = 2; i < geom->n - 2; ++i)
            if (geom->at(i, j) == NodeClass::interior && norm(geom->node(i, j)) < 4.0)
                CHECK(c.at(i, j) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("potential reconstruction round trip on an exact gradient") {
    const double a = 0.3, b = 0.7;
    const Field2D u = quadratic_gradient_field(a, b, 5.0, 129);
    const ScalarField phi = potential(u, +1, {0, 0});
    const GridGeometry& g = *u.geom;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const Vec2 p = g.node(i, j);
            const double exact = -0.5 * (a * p[0] * p[0] + b * p[1] * p[1]);
            CHECK(phi.at(i, j) == doctest::Approx(exact).epsilon(1e-9).scale(1.0));
        }
}

TEST_CASE("rotational fields are rejected by the potential") {
    auto geom = GridGeometry::disk(5.0, 129);
    Field2D u(geom, 0);
    for (int j = 0; j < geom->n; ++j)
        for (int i = 0; i < geom->n; ++i) {
            if (!geom->inside(i, j)) continue;
            const Vec2 p = geom->node(i, j);
            u.re[geom->idx(i, j)] = -p[1];
            u.im[geom->idx(i, j)] = p[0];
        }
    CHECK_THROWS_AS(potential(u, +1, {0, 0}), NotCurlFree);
}

TEST_CASE("best rotation undoes a random target-space rotation") {
    const Field2D u = vortex_field(1, 15.0, 193);
    const Field2D ur0 = rotate(u, best_rotation(u));
    const double base = max_norm(curl_field(ur0));
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> ang(0.0, 2 * 3.14159265358979);
    for (int trial = 0; trial < 4; ++trial) {
        const Field2D v = rotate(u, ang(rng));
        const Field2D vr = rotate(v, best_rotation(v));
        CHECK(max_norm(curl_field(vr)) == doctest::Approx(base).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("zero finding on centered and shifted vortices") {
    {
        const ZeroFindResult z = find_zeros(vortex_field(1, 15.0, 193));
        REQUIRE(z.zeros.size() == 1);
        CHECK(norm(z.zeros[0]) < 0.08);
    }
    {
        const RadialProfile p = solve_profile(1, 40.0, 4000);
        auto geom = GridGeometry::disk(15.0, 193);
        const Field2D u = synthesize_field(p, geom, 1, {3.0, -2.0});
        const ZeroFindResult z = find_zeros(u);
        REQUIRE(z.zeros.size() == 1);
        CHECK(norm(z.zeros[0] - Vec2{3.0, -2.0}) < 0.08);
    }
}

TEST_CASE("local zero structure fit recovers the monomial degree") {
    const Field2D u2 = vortex_field(2, 15.0, 257);
    const ZeroFit fit = local_zero_fit(u2, {0, 0}, 1.0);
    CHECK(fit.degree_est == 2);
    CHECK(std::abs(fit.a2) / std::abs(fit.a1) < 0.05);
    CHECK_FALSE(fit.conjugate_dominant);

    const Field2D um1 = vortex_field(-1, 15.0, 257);
    const ZeroFit fconj = local_zero_fit(um1, {0, 0}, 1.0);
    CHECK(fconj.degree_est == 1);
    CHECK(fconj.conjugate_dominant);
}

TEST_CASE("relaxation converges on the disk problem and keeps the degree") {
    const RadialProfile p = solve_disk_profile(1, 5.0, 1000);
    auto geom = GridGeometry::disk(5.0, 129);
    const Field2D u0 = synthesize_field(p, geom, 1);
    const RelaxResult rr = relax_solve(u0, 20000, 1e-5);
    CHECK(rr.converged);
    CHECK(rr.residual < 1e-5);
    CHECK(degree(rr.u, 2.5) == 1);
    const ZeroFindResult z = find_zeros(rr.u);
    REQUIRE(z.zeros.size() == 1);
    CHECK(norm(z.zeros[0]) < 2 * geom->h);
}

TEST_CASE("relaxation reduces the residual of a perturbed seed") {
    const RadialProfile p = solve_disk_profile(1, 5.0, 1000);
    auto geom = GridGeometry::disk(5.0, 129);
    Field2D u0 = synthesize_field(p, geom, 1);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> eps(-0.05, 0.05);
    for (int j = 0; j < geom->n; ++j)
        for (int i = 0; i < geom->n; ++i) {
            if (geom->at(i, j) != NodeClass::interior) continue;
            u0.re[geom->idx(i, j)] += eps(rng);
            u0.im[geom->idx(i, j)] += eps(rng);
        }
    const double before = max_norm(gl_residual(u0));
    const RelaxResult rr = relax_solve(u0, 20000, 1e-4);
    CHECK(rr.converged);
    CHECK(rr.residual < before / 100);
}

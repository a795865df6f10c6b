#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "glv/radial.hpp"

using namespace glv;

TEST_CASE("half-line profile: shape and boundary behavior") {
    const RadialProfile p = solve_profile(1, 20.0, 2000);
    CHECK(p.f.front() == 0.0);
    CHECK(p.f.back() > 0.99);
    CHECK(p.f.back() < 1.0);
    CHECK(std::is_sorted(p.f.begin(), p.f.end()));
    // far tail matches 1 - d^2 / (2 r^2)
    const double r = p.r[1900];
    CHECK(p.f[1900] == doctest::Approx(1.0 - 1.0 / (2 * r * r)).epsilon(1e-3));
}

TEST_CASE("shooting coefficient against an independent fine-step integration") {
    const RadialProfile p = solve_profile(1, 20.0, 2000);
    // Oracle: same classification run at 20x the step resolution.
    const double a_fine = shoot_slope_coefficient(1, 20.0, 40000);
    CHECK(p.slope_coeff == doctest::Approx(a_fine).epsilon(2e-5));
    CHECK(a_fine == doctest::Approx(0.58318941).epsilon(1e-6));
}

TEST_CASE("quantization identity: integral of (1-f^2)^2 r equals d^2") {
    for (int d : {1, 2}) {
        const RadialProfile p = solve_profile(d, 30.0, 3000);
        CHECK(quantization_integral(p) == doctest::Approx(double(d * d)).epsilon(0.01));
    }
}

TEST_CASE("far-field amplitude defect r^2 (1 - f^2) approaches d^2") {
    for (int d : {1, 2}) {
        const RadialProfile p = solve_profile(d, 40.0, 4000);
        CHECK(asymptotic_check(p, 30.0) == doctest::Approx(double(d * d)).epsilon(0.05));
    }
}

TEST_CASE("residual is second order in the grid spacing") {
    const double res_c = profile_residual(solve_profile(1, 20.0, 2000));
    const double res_f = profile_residual(solve_profile(1, 20.0, 4000));
    CHECK(res_c / res_f == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("disk profile: boundary condition and monotonicity") {
    const RadialProfile p = solve_disk_profile(2, 8.0, 1600);
    CHECK(p.kind == RadialProfile::Kind::disk);
    CHECK(p.f.front() == 0.0);
    CHECK(p.f.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::is_sorted(p.f.begin(), p.f.end()));
    CHECK(profile_residual(p) < 1e-3);
    CHECK(p.slope_coeff > 0.0);
}

TEST_CASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(solve_profile(0, 20.0, 1000), std::invalid_argument);
    CHECK_THROWS_AS(solve_profile(1, 5.0, 1000), std::invalid_argument);
    CHECK_THROWS_AS(solve_disk_profile(0, 8.0, 1600), std::invalid_argument);
}

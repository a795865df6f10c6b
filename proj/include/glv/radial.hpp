#pragma once
// Radial profile solver for the Ginzburg-Landau vortex amplitude equation
//
//   -f'' - f'/r + d^2 f / r^2 = f (1 - f^2)
//
// on the truncated half line [0, r_max] (far condition matched to the
// 1 - d^2/(2 r^2) tail) or on a disk [0, R] with f(R) = 1.

#include <stdexcept>
#include <vector>

namespace glv {

struct RadialProfile {
    enum class Kind { half_line, disk };

    int degree = 1;              ///< winding number d >= 1
    std::vector<double> r;       ///< uniform grid, r[0] = 0
    std::vector<double> f;       ///< profile values, f[0] = 0
    double slope_coeff = 0.0;    ///< a in f ~ a r^d near the origin
    Kind kind = Kind::half_line;

    double r_max() const { return r.back(); }
    double spacing() const { return r[1] - r[0]; }
};

struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShootingNoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solve the half-line profile f_d on [0, r_max] sampled at n+1 uniform nodes.
/// The shooting coefficient a (f ~ a r^d) is bisected on overshoot (f > 1)
/// versus undershoot (f' < 0); tol controls the bisection stop.
RadialProfile solve_profile(int d, double r_max, int n, double tol = 1e-12);

/// Solve the disk problem F_d on [0, R] with F_d(R) = 1.
RadialProfile solve_disk_profile(int d, double R, int n, double tol = 1e-12);

/// Max-norm ODE residual over interior nodes using centered second-order
/// differences.  Second order in the grid spacing for exact profiles.
double profile_residual(const RadialProfile& p);

/// Trapezoid of (1 - f^2)^2 r over the grid plus the d^4/(2 r_max^2) tail
/// correction.  Equals d^2 for the vortex profiles (quantization identity
/// with the 2 pi of the area element divided out).
double quantization_integral(const RadialProfile& p);

/// r_eval^2 (1 - f(r_eval)^2); approaches d^2 for large r_eval.
double asymptotic_check(const RadialProfile& p, double r_eval);

/// Shooting classifier exposed for the fine-grid oracle: bisect the slope
/// coefficient a with n RK4 steps on [0, r_max], returning the converged a.
double shoot_slope_coefficient(int d, double r_max, int n, double tol = 1e-14);

}  // namespace glv

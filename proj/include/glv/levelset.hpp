#pragma once
// Level curves {phi = t} as stitched marching-squares polylines, with the
// polygon quantities the symmetry diagnostics are built from.

#include <stdexcept>
#include <vector>

#include "glv/grid.hpp"

namespace glv {

struct Loop {
    std::vector<Vec2> pts;       ///< closed: pts.front() == pts.back()
    std::vector<Vec2> normals;   ///< per segment, outward (toward decreasing phi)
    std::vector<double> seglen;  ///< per segment arclength

    int segments() const { return int(pts.size()) - 1; }
    Vec2 midpoint(int s) const { return 0.5 * (pts[s] + pts[s + 1]); }
};

struct LevelSet {
    double t = 0.0;
    std::vector<Loop> loops;
    double area = 0.0;       ///< |Lambda_t|
    double perimeter = 0.0;  ///< |d Lambda_t|
};

struct IncompleteLoop : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Marching squares with linear edge interpolation for the super-level
/// region {phi > t}.  Saddles are resolved by the cell-center average.
/// Throws IncompleteLoop when the level curve leaves the mask.
LevelSet extract_level_set(const ScalarField& phi, double t);

/// perimeter^2 - 4 pi area.
double isoperimetric_deficit(const LevelSet& ls);

struct RadiiComparison {
    double r_under = 0.0;  ///< min vertex distance to x0
    double r_over = 0.0;   ///< max vertex distance to x0
    double rho = 0.0;      ///< equal-area radius
    bool ordered = false;  ///< r_over >= rho >= r_under within grid slack
};

RadiiComparison radii_comparison(const LevelSet& ls, Vec2 x0, double slack = 0.0);

struct NotStarShaped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integral of d sigma / <x - x0, nu> minus 2 pi; zero exactly on circles
/// about x0.  Throws NotStarShaped if <x - x0, nu> <= 0 somewhere.
double starshaped_integral(const LevelSet& ls, Vec2 x0);

}  // namespace glv

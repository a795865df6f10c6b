#pragma once
// Assembly of the per-level diagnostics into one report with a symmetry
// verdict.

#include <optional>

#include "glv/rearrange.hpp"

namespace glv {

enum class ProblemKind {
    plane_vortex,    ///< potential normalized to 0 at the peak, negative outward
    disk_dirichlet,  ///< potential normalized to inf = 0 on the boundary
};

struct DiagnosticsConfig {
    int n_levels = 40;
    double area_cap = 0.8;
    /// Slack scale: per-level slack is slack_C * h * perimeter.  Calibrated
    /// on marching-squares circles, whose measured deficits stay below
    /// 0.01 h P; the frozen value leaves two orders of margin.
    double slack_C = 1.0;
    double tol = 1e-2;  ///< verdict tolerance on normalized H and deficit
};

struct LevelRecord {
    double t = 0, rho = 0;
    double M = 0, A = 0;
    double H_rearr = 0, H_surface = 0;
    double pohozaev_residual = 0, pohozaev_leading = 0;
    double deficit = 0;
    double r_under = 0, r_over = 0;
    double curve_length = 0;       ///< traced steepest-descent length (0 if failed)
    double starshaped = 0;         ///< star-shaped boundary integral minus 2 pi
    bool starshaped_ok = false;    ///< false when the level is not star-shaped
};

enum class Verdict { symmetric, asymmetric, inconclusive };

struct DiagnosticsReport {
    ProblemKind kind = ProblemKind::plane_vortex;
    Vec2 center{0, 0};
    double t0 = 0;
    std::vector<LevelRecord> records;  ///< sorted by t descending
    RadialRearrangement rearrangement;
    NonlinearityG nonlinearity;
    bool theta_constancy = true;  ///< level-constancy of 1 - |grad phi|^2 held
    bool H_monotone = true;       ///< H_rearr non-decreasing within slack
    double H_limit = 0;           ///< terminal |H| / (2 pi^2 rho^2), larger form
    double slack = 0;             ///< terminal raw-H slack
    Verdict verdict = Verdict::inconclusive;
};

/// Run the full level sweep on a potential and assemble every diagnostic.
DiagnosticsReport build_report(const ScalarField& phi, const DiagnosticsConfig& cfg,
                               ProblemKind kind,
                               std::function<double(Vec2)> weight = {});

/// symmetric:   H_rearr monotone within slack, terminal normalized H below
///              tol, and deficit / (4 pi area) below tol at every level;
/// asymmetric:  terminal raw H (either form) above 10x the slack;
/// inconclusive otherwise, and whenever the constancy hypothesis failed
///              without the H excess that certifies asymmetry.
Verdict symmetry_verdict(const DiagnosticsReport& report, double tol);

}  // namespace glv

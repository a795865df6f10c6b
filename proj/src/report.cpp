#include "glv/report.hpp"

#include <cmath>
#include <numbers>

namespace glv {
namespace {

constexpr double pi = std::numbers::pi;

double normalized(double H, double rho) { return std::abs(H) / (2 * pi * pi * rho * rho); }

}  // namespace

DiagnosticsReport build_report(const ScalarField& phi, const DiagnosticsConfig& cfg,
                               ProblemKind kind, std::function<double(Vec2)> weight) {
    DiagnosticsReport rep;
    rep.kind = kind;
    rep.rearrangement = sweep_levels(phi, cfg.n_levels, cfg.area_cap);
    rep.nonlinearity = reconstruct_nonlinearity(phi, rep.rearrangement, std::move(weight));
    rep.center = rep.rearrangement.center;
    rep.t0 = rep.rearrangement.t0;
    rep.theta_constancy = rep.nonlinearity.spread_ok;

    const RadialRearrangement& rr = rep.rearrangement;
    const NonlinearityG& ng = rep.nonlinearity;
    const double h = phi.geom->h;
    const auto Hrecs = compute_H_rearranged(rr, ng);

    rep.records.resize(rr.t.size());
    for (std::size_t k = 0; k < rr.t.size(); ++k) {
        LevelRecord& rec = rep.records[k];
        const LevelSet& ls = rr.levels[k];
        rec.t = rr.t[k];
        rec.rho = rr.rho[k];
        rec.M = Hrecs[k].M;
        rec.A = Hrecs[k].A;
        rec.H_rearr = Hrecs[k].H;
        rec.H_surface = compute_H_surface(phi, ls, rep.center);
        const PohozaevBalance pb = pohozaev_residual(phi, ng, ls, rep.center);
        rec.pohozaev_residual = pb.residual;
        rec.pohozaev_leading = pb.leading;
        rec.deficit = isoperimetric_deficit(ls);
        const RadiiComparison rc = radii_comparison(ls, rep.center, h);
        rec.r_under = rc.r_under;
        rec.r_over = rc.r_over;
        try {
            rec.curve_length = integral_curve_length(phi, rr, ng, rec.t).traced;
        } catch (const std::runtime_error&) {
            rec.curve_length = 0;
        }
        try {
            rec.starshaped = starshaped_integral(ls, rep.center);
            rec.starshaped_ok = true;
        } catch (const NotStarShaped&) {
            rec.starshaped = 0;
            rec.starshaped_ok = false;
        }
    }

    rep.H_monotone = true;
    for (std::size_t k = 0; k + 1 < rep.records.size(); ++k) {
        const double slack_k = cfg.slack_C * h * rr.levels[k + 1].perimeter;
        if (rep.records[k + 1].H_rearr < rep.records[k].H_rearr - slack_k)
            rep.H_monotone = false;
    }
    const LevelRecord& last = rep.records.back();
    rep.H_limit = std::max(normalized(last.H_rearr, last.rho),
                           normalized(last.H_surface, last.rho));
    rep.slack = cfg.slack_C * h * rr.levels.back().perimeter;
    rep.verdict = symmetry_verdict(rep, cfg.tol);
    return rep;
}

Verdict symmetry_verdict(const DiagnosticsReport& report, double tol) {
    const LevelRecord& last = report.records.back();
    const double terminal_H = std::max(std::abs(last.H_rearr), std::abs(last.H_surface));
    if (terminal_H > 10.0 * report.slack) return Verdict::asymmetric;
    if (!report.theta_constancy || !report.H_monotone) return Verdict::inconclusive;
    if (report.H_limit >= tol) return Verdict::inconclusive;
    for (const LevelRecord& rec : report.records)
        if (rec.deficit >= tol * 4 * pi * pi * rec.rho * rec.rho)
            return Verdict::inconclusive;
    return Verdict::symmetric;
}

}  // namespace glv

// Acceptance gate: one pass/fail line per criterion, exit nonzero on any
// failure.  Each criterion pins the tolerances it is checked against.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "glv/io.hpp"
#include "glv/lift.hpp"
#include "glv/math_util.hpp"
#include "glv/report.hpp"

using namespace glv;

namespace {

constexpr double pi = std::numbers::pi;
int failures = 0;

void check(int id, bool ok, const std::string& label, const std::string& detail) {
    std::printf("[%s] criterion %02d %s: %s\n", ok ? "PASS" : "FAIL", id,
                label.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct PotentialChain {
    ScalarField phi;
    DiagnosticsReport rep;
};

/// synthesize -> optimal rotation -> potential -> full diagnostics
PotentialChain vortex_chain(const RadialProfile& prof, double R, int n,
                            int levels = 40) {
    const Field2D u = synthesize_field(prof, GridGeometry::disk(R, n), prof.degree);
    const Field2D ur = rotate(u, best_rotation(u));
    ScalarField phi = potential(ur, +1, u.geom->center,
                                PotentialNormalization::zero_at_center);
    DiagnosticsConfig cfg;
    cfg.n_levels = levels;
    DiagnosticsReport rep = build_report(phi, cfg, ProblemKind::plane_vortex);
    return {std::move(phi), std::move(rep)};
}

double norm_H(double H, double rho) { return std::abs(H) / (2 * pi * pi * rho * rho); }

/// Worst relative Pohozaev residual over the outer half of the levels of a
/// converged disk solution.
double disk_pohozaev(const Field2D& solved, double* out_zero_dist = nullptr,
                     std::size_t* out_zero_count = nullptr) {
    const Field2D ur = rotate(solved, best_rotation(solved));
    const ScalarField phi = potential(ur, +1, solved.geom->center,
                                      PotentialNormalization::inf_zero);
    const RadialRearrangement rr = sweep_levels(phi, 24);
    const NonlinearityG ng = reconstruct_nonlinearity(phi, rr);
    double worst = 0;
    for (std::size_t k = rr.t.size() / 2; k < rr.t.size(); ++k) {
        const PohozaevBalance pb = pohozaev_residual(phi, ng, rr.levels[k], rr.center);
        if (pb.leading > 0) worst = std::max(worst, pb.residual / pb.leading);
    }
    const ZeroFindResult z = find_zeros(solved);
    if (out_zero_count) *out_zero_count = z.zeros.size();
    if (out_zero_dist && !z.zeros.empty()) *out_zero_dist = norm(z.zeros[0]);
    return worst;
}

}  // namespace

int main() {
    // ---- criteria 1-3: radial profiles --------------------------------
    const auto t_start = std::chrono::steady_clock::now();
    const RadialProfile p1 = solve_profile(1, 50.0, 5000);
    const RadialProfile p2 = solve_profile(2, 50.0, 5000);
    const RadialProfile p3 = solve_profile(3, 50.0, 5000);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    {
        bool ok = elapsed < 10.0;
        std::string detail = "runtime " + fmt(elapsed) + "s;";
        for (const RadialProfile* p : {&p1, &p2, &p3}) {
            const double q = quantization_integral(*p);
            const double d2 = double(p->degree * p->degree);
            ok = ok && std::abs(q - d2) / d2 < 0.005;
            detail += " d=" + std::to_string(p->degree) + " Q=" + fmt(q);
        }
        check(1, ok, "amplitude-defect quantization", detail + " (tol 0.5% rel, <10 s)");
    }
    {
        const double s1 = asymptotic_check(p1, 40.0);
        const double s2 = asymptotic_check(p2, 40.0);
        check(2,
              std::abs(s1 - 1.0) < 0.02 && std::abs(s2 - 4.0) / 4.0 < 0.02,
              "far-field amplitude defect",
              "r^2(1-f^2) at r=40: d=1 " + fmt(s1) + ", d=2 " + fmt(s2) +
                  " (tol 2% of d^2)");
    }
    {
        const double rc = profile_residual(p1);
        const double rf = profile_residual(solve_profile(1, 50.0, 10000));
        const double ratio = rc / rf;
        check(3, ratio > 3.2 && ratio < 4.8, "profile second-order convergence",
              "residual ratio 5000/10000 = " + fmt(ratio) + " (4x +- 20%)");
    }

    // ---- criteria 4-5: H functional on the synthetic vortex -----------
    const RadialProfile pv = solve_profile(1, 40.0, 4000);
    const PotentialChain coarse = vortex_chain(pv, 20.0, 257);  // h = R/128
    const PotentialChain fine = vortex_chain(pv, 20.0, 513);    // h = R/256
    {
        double worst_f = 0, worst_c = 0;
        const auto& fr = fine.rep.records;
        const auto& cr = coarse.rep.records;
        for (std::size_t k = fr.size() - 5; k < fr.size(); ++k)
            worst_f = std::max(worst_f, norm_H(fr[k].H_rearr, fr[k].rho));
        for (std::size_t k = cr.size() - 5; k < cr.size(); ++k)
            worst_c = std::max(worst_c, norm_H(cr[k].H_rearr, cr[k].rho));
        const bool ok = worst_f <= 1e-2 && worst_f < worst_c && fine.rep.H_monotone;
        check(4, ok, "normalized H limit",
              "largest-5-levels H/(2 pi^2 rho^2): fine " + fmt(worst_f) + ", coarse " +
                  fmt(worst_c) + ", monotone=" + (fine.rep.H_monotone ? "1" : "0") +
                  " (<= 1e-2, decreasing under refinement)");
    }
    {
        double worst = 0;
        for (const LevelRecord& r : fine.rep.records) {
            const double a = norm_H(r.H_rearr, r.rho), b = norm_H(r.H_surface, r.rho);
            const double diff = std::abs(a - b);
            const double allowed = std::max(0.05 * std::max(a, b), 1e-3);
            worst = std::max(worst, diff / allowed);
        }
        check(5, worst <= 1.0, "two H forms agree",
              "worst normalized mismatch = " + fmt(worst) +
                  " of allowance (5% rel, 1e-3 abs near zero)");
    }

    // ---- criterion 6: Pohozaev balance on the disk problem ------------
    const RadialProfile pd1 = solve_disk_profile(1, 10.0, 2000);
    const Field2D seed_c = synthesize_field(pd1, GridGeometry::disk(10.0, 257), 1);
    const Field2D seed_f = synthesize_field(pd1, GridGeometry::disk(10.0, 513), 1);
    const RelaxResult sol_c = relax_solve(seed_c, 60000, 1e-5);
    const RelaxResult sol_f = relax_solve(seed_f, 120000, 1e-5);
    double zero_dist = 1e9;
    std::size_t zero_count = 0;
    {
        const double res_c = disk_pohozaev(sol_c.u, &zero_dist, &zero_count);
        const double res_f = disk_pohozaev(sol_f.u);
        const double ratio = res_f / res_c;
        const bool ok = sol_c.converged && sol_f.converged && res_c < 1e-2 &&
                        ratio > 0.35 && ratio < 0.65;
        check(6, ok, "Pohozaev balance",
              "relative residual h=R/128: " + fmt(res_c) + ", h=R/256: " + fmt(res_f) +
                  ", ratio " + fmt(ratio) + " (<1e-2, halving +-30%)");
    }

    // ---- criterion 7: winding numbers and zero finding ----------------
    {
        bool ok = true;
        std::string detail = "degrees:";
        for (int d : {-2, -1, 1, 2, 3}) {
            const RadialProfile pp = solve_profile(std::abs(d), 40.0, 4000);
            const Field2D u = synthesize_field(pp, GridGeometry::disk(15.0, 193), d);
            const int got = degree(u, 7.5);
            ok = ok && got == d;
            detail += " " + std::to_string(got);
        }
        const double cell = sol_c.u.geom->h;
        ok = ok && zero_count == 1 && zero_dist <= cell;
        check(7, ok, "degree and zero structure",
              detail + "; disk solution zeros=" + std::to_string(zero_count) +
                  " dist=" + fmt(zero_dist) + " (exact degrees, one zero within a cell)");
    }

    // ---- criterion 8: local monomial fit at a double zero -------------
    {
        const RadialProfile pp2 = solve_profile(2, 40.0, 4000);
        const Field2D u2 = synthesize_field(pp2, GridGeometry::disk(15.0, 257), 2);
        const ZeroFit fit = local_zero_fit(u2, {0, 0}, 1.0);
        const double ratio = std::abs(fit.a2) / std::abs(fit.a1);
        check(8, fit.degree_est == 2 && ratio < 0.05, "local zero fit",
              "m=" + std::to_string(fit.degree_est) + " |a2|/|a1|=" + fmt(ratio) +
                  " (m=2, ratio < 0.05)");
    }

    // ---- criterion 9: degree reduction chain --------------------------
    const RadialProfile pd2 = solve_disk_profile(2, 5.0, 2000);
    const Field2D seed2 = synthesize_field(pd2, GridGeometry::disk(5.0, 257), 2);
    const RelaxResult sol2 = relax_solve(seed2, 60000, 1e-4);
    LiftedField lifted = lift(sol2.u, 2);
    const KappaConstancy kc = kappa_constancy(lifted, 24);
    {
        bool g_ok = true;
        for (std::size_t k = 0; k < kc.ng.g.size(); ++k) {
            if (kc.ng.g[k] < -1e-12) g_ok = false;
            if (k > 0 && kc.ng.g[k] < kc.ng.g[k - 1] - 1e-12) g_ok = false;
        }
        const bool ok = sol2.converged && kc.max_relative_spread < 0.05 && g_ok;
        check(9, ok, "degree-two reduction chain",
              "kappa spread " + fmt(kc.max_relative_spread) + ", g monotone=" +
                  (g_ok ? "1" : "0") + " (spread < 5%, g >= 0 nondecreasing)");
    }

    // ---- criterion 10: symmetry discrimination ------------------------
    {
        // translated copy of the radial potential
        std::vector<double> cum(pv.r.size(), 0.0);
        for (std::size_t i = 1; i < pv.r.size(); ++i)
            cum[i] = cum[i - 1] + 0.5 * (pv.f[i - 1] + pv.f[i]) * pv.spacing();
        UniformCubic psi(pv.r.front(), pv.spacing(), cum);
        const Vec2 c0{0.8, 0.6};
        auto geom = GridGeometry::disk(20.0, 257);
        ScalarField phi_t(geom), phi_s(geom);
        for (int j = 0; j < geom->n; ++j)
            for (int i = 0; i < geom->n; ++i) {
                if (!geom->inside(i, j)) continue;
                const Vec2 x = geom->node(i, j);
                phi_t.at(i, j) = -psi(std::min(norm(x - c0), psi.x_max()));
                phi_s.at(i, j) =
                    -psi(std::min(std::hypot(1.5 * x[0], x[1]), psi.x_max()));
            }
        DiagnosticsConfig cfg;
        const DiagnosticsReport rep_t = build_report(phi_t, cfg, ProblemKind::plane_vortex);
        const DiagnosticsReport rep_s = build_report(phi_s, cfg, ProblemKind::plane_vortex);
        bool deficits_pos = true;
        for (const LevelRecord& r : rep_s.records) deficits_pos = deficits_pos && r.deficit > 0;
        const double center_err = norm(rep_t.center - c0);
        const bool ok = coarse.rep.verdict == Verdict::symmetric &&
                        rep_t.verdict == Verdict::symmetric &&
                        center_err < 2 * geom->h &&
                        rep_s.verdict == Verdict::asymmetric && deficits_pos;
        check(10, ok, "symmetry discrimination",
              "radial=" + verdict_name(coarse.rep.verdict) + ", translated=" +
                  verdict_name(rep_t.verdict) + " (center err " + fmt(center_err) +
                  "), sheared=" + verdict_name(rep_s.verdict) +
                  " deficits>0=" + (deficits_pos ? "1" : "0"));
    }

    // ---- criterion 11: curve-length equality chain --------------------
    {
        const auto& rr = fine.rep.rearrangement;
        const auto& ng = fine.rep.nonlinearity;
        double worst = 0;
        for (std::size_t k : {rr.t.size() / 2, rr.t.size() * 3 / 4, rr.t.size() - 2}) {
            const CurveLengths cl = integral_curve_length(fine.phi, rr, ng, rr.t[k]);
            const LevelRecord& rec = fine.rep.records[k];
            const double rbar = 0.5 * (rec.r_under + rec.r_over);
            const double vals[4] = {cl.traced, cl.theta_form, rr.rho[k], rbar};
            for (double a : vals)
                for (double b : vals)
                    worst = std::max(worst, std::abs(a - b) / std::max(a, b));
        }
        check(11, worst < 0.01, "curve-length equality chain",
              "worst pairwise mismatch " + fmt(worst) +
                  " among traced, level-function form, rho, mean radius (< 1%)");
    }

    // ---- criterion 12: star-shape probe -------------------------------
    {
        double worst = 0;
        bool all_ok = true;
        for (const LevelRecord& r : fine.rep.records) {
            all_ok = all_ok && r.starshaped_ok;
            worst = std::max(worst, std::abs(r.starshaped));
        }
        const double h = fine.phi.geom->h;
        check(12, all_ok && worst <= h, "star-shape integral on circles",
              "worst |integral - 2 pi| = " + fmt(worst) + " (<= h = " + fmt(h) + ")");
        std::printf("  star-shape decay table for the lifted degree-2 solution "
                    "(t, rho, (integral - 2 pi) * rho^2):\n");
        for (std::size_t k = 0; k < kc.rr.t.size(); ++k) {
            try {
                const double star =
                    starshaped_integral(kc.rr.levels[k], kc.rr.center);
                std::printf("  %10.5f %10.5f %12.5g\n", kc.rr.t[k], kc.rr.rho[k],
                            star * kc.rr.rho[k] * kc.rr.rho[k]);
            } catch (const NotStarShaped&) {
                std::printf("  %10.5f %10.5f   not star-shaped\n", kc.rr.t[k],
                            kc.rr.rho[k]);
            }
        }
    }

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}

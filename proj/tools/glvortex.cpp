// Command-line driver: radial profiles, disk solutions, symmetry diagnostics,
// degree reduction, and report re-emission.
//
// Exit codes: 0 success, 1 numerical / input failure, 2 when a structural
// hypothesis of the diagnostics is violated by the data (field not curl-free,
// several zeros, several critical values, phase not liftable, or an
// asymmetric verdict).

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "glv/io.hpp"
#include "glv/lift.hpp"

namespace {

using namespace glv;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_hypothesis = 2;

/// Config-file fallback: for every option of `cmd` not given on the command
/// line, look up its long name (without dashes) in the key=value map.
void apply_config(CLI::App* cmd, const std::map<std::string, std::string>& cfg) {
    for (CLI::Option* opt : cmd->get_options()) {
        if (opt->count() > 0) continue;  // flags override the config file
        const auto& lnames = opt->get_lnames();
        if (lnames.empty()) continue;
        const std::string& name = lnames.front();
        const auto it = cfg.find(name);
        if (it == cfg.end()) continue;
        opt->add_result(it->second);
        opt->run_callback();
    }
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> cfg;
    if (path.empty()) return cfg;
    for (const auto& [k, v] : read_key_values(path)) cfg[k] = v;
    return cfg;
}

int run_profile(int d, double rmax, int n, double tol, const std::string& out,
                const std::string& field_out, double R, int grid_n) {
    RadialProfile p = solve_profile(d, rmax, n, tol);
    write_profile_csv(out + ".csv", p);
    write_key_values(out + "_summary.txt",
                     {{"degree", std::to_string(p.degree)},
                      {"kind", "half_line"},
                      {"r_max", format_double(p.r_max())},
                      {"n", std::to_string(n)},
                      {"slope_coeff", format_double(p.slope_coeff)},
                      {"residual", format_double(profile_residual(p))},
                      {"quantization", format_double(quantization_integral(p))}});
    std::cout << "profile: d=" << d << " slope_coeff=" << format_double(p.slope_coeff)
              << " quantization=" << format_double(quantization_integral(p)) << "\n";
    if (!field_out.empty()) {
        const double Rw = R > 0 ? R : rmax;
        auto geom = GridGeometry::disk(Rw, grid_n);
        Field2D u = synthesize_field(p, geom, d);
        write_field_csv(field_out, u, ProblemKind::plane_vortex);
        std::cout << "profile: wrote synthetic field to " << field_out << "\n";
    }
    return exit_ok;
}

int run_solve_disk(int d, double R, int grid_n, int profile_n, double tol,
                   int max_iter, const std::string& out) {
    RadialProfile p = solve_disk_profile(d, R, profile_n);
    auto geom = GridGeometry::disk(R, grid_n);
    Field2D u0 = synthesize_field(p, geom, d);
    RelaxResult rr = relax_solve(u0, max_iter, tol);
    if (!rr.converged) {
        std::cerr << "solve-disk: relaxation did not converge (residual "
                  << rr.residual << ")\n";
        return exit_failure;
    }
    write_field_csv(out + "_field.csv", rr.u, ProblemKind::disk_dirichlet);
    const auto zeros = find_zeros(rr.u);
    KeyValues kv{{"degree", std::to_string(d)},
                 {"R", format_double(R)},
                 {"grid_n", std::to_string(grid_n)},
                 {"sweeps", std::to_string(rr.sweeps)},
                 {"residual", format_double(rr.residual)},
                 {"zero_count", std::to_string(zeros.zeros.size())}};
    if (!zeros.zeros.empty()) {
        kv.emplace_back("zero_x", format_double(zeros.zeros[0][0]));
        kv.emplace_back("zero_y", format_double(zeros.zeros[0][1]));
    }
    write_key_values(out + "_summary.txt", kv);
    std::cout << "solve-disk: converged in " << rr.sweeps << " sweeps, residual "
              << format_double(rr.residual) << "\n";
    return exit_ok;
}

void emit_report(const DiagnosticsReport& rep, const std::string& out,
                 KeyValues extra = {}) {
    write_report_csv(out + "_report.csv", rep);
    KeyValues kv = report_summary(rep);
    kv.insert(kv.end(), extra.begin(), extra.end());
    write_key_values(out + "_summary.txt", kv);
    std::vector<double> t, rho, H, deficit;
    for (const LevelRecord& r : rep.records) {
        t.push_back(r.t);
        rho.push_back(r.rho);
        H.push_back(r.H_rearr);
        deficit.push_back(r.deficit);
    }
    write_plot(out + "_plot_t_H.dat", t, H);
    write_plot(out + "_plot_rho_H.dat", rho, H);
    write_plot(out + "_plot_t_deficit.dat", t, deficit);
}

int run_diagnose(const std::string& in, int levels, double tol, double slack_C,
                 const std::string& out) {
    FieldFile ff = read_field_csv(in);
    const auto zeros = find_zeros(ff.u);
    if (zeros.zeros.size() > 1) {
        std::cerr << "diagnose: field has " << zeros.zeros.size()
                  << " zeros; single-zero hypothesis violated\n";
        return exit_hypothesis;
    }
    const double beta = best_rotation(ff.u);
    Field2D ur = rotate(ff.u, beta);
    const auto normalization = ff.kind == ProblemKind::plane_vortex
                                   ? PotentialNormalization::zero_at_center
                                   : PotentialNormalization::inf_zero;
    ScalarField phi = potential(ur, +1, ff.u.geom->center, normalization);
    DiagnosticsConfig cfg;
    cfg.n_levels = levels;
    cfg.tol = tol;
    cfg.slack_C = slack_C;
    DiagnosticsReport rep = build_report(phi, cfg, ff.kind);
    emit_report(rep, out, {{"rotation", format_double(beta)}});
    std::cout << "diagnose: verdict=" << verdict_name(rep.verdict)
              << " H_limit=" << format_double(rep.H_limit)
              << " levels=" << rep.records.size() << "\n";
    return rep.verdict == Verdict::asymmetric ? exit_hypothesis : exit_ok;
}

int run_lift(const std::string& in, int d, int levels, const std::string& out) {
    FieldFile ff = read_field_csv(in);
    LiftedField lf = lift(ff.u, d);
    write_field_csv(out + "_field.csv", lf.v, ProblemKind::disk_dirichlet);
    KappaConstancy kc = kappa_constancy(lf, levels);
    {
        auto o = std::ofstream(out + "_kappa.csv", std::ios::binary);
        o << "t,rho,kappa,kappa_spread\n";
        for (std::size_t k = 0; k < kc.ng.t.size(); ++k)
            o << format_double(kc.ng.t[k]) << ","
              << format_double(kc.rr.rho[kc.rr.rho.size() - 1 - k]) << ","
              << format_double(kc.ng.theta[k]) << ","
              << format_double(kc.ng.theta_spread[k]) << "\n";
    }
    write_key_values(out + "_summary.txt",
                     {{"degree", std::to_string(d)},
                      {"target_R", format_double(lf.v.geom->R)},
                      {"branch_check", format_double(lf.branch_check)},
                      {"residual", format_double(max_norm(lifted_residual(lf)))},
                      {"kappa_max_relative_spread",
                       format_double(kc.max_relative_spread)}});
    std::cout << "lift: d=" << d
              << " kappa spread=" << format_double(kc.max_relative_spread)
              << " branch=" << format_double(lf.branch_check) << "\n";
    return exit_ok;
}

int run_report(const std::string& in, const std::string& out) {
    const auto recs = read_report_csv(in);
    if (recs.empty()) {
        std::cerr << "report: no level rows in " << in << "\n";
        return exit_failure;
    }
    std::vector<double> t, rho, H, deficit;
    for (const LevelRecord& r : recs) {
        t.push_back(r.t);
        rho.push_back(r.rho);
        H.push_back(r.H_rearr);
        deficit.push_back(r.deficit);
    }
    write_plot(out + "_plot_t_H.dat", t, H);
    write_plot(out + "_plot_rho_H.dat", rho, H);
    write_plot(out + "_plot_t_deficit.dat", t, deficit);
    std::cout << "t rho H_rearr H_surface deficit\n";
    for (const LevelRecord& r : recs)
        std::cout << format_double(r.t) << " " << format_double(r.rho) << " "
                  << format_double(r.H_rearr) << " " << format_double(r.H_surface)
                  << " " << format_double(r.deficit) << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ginzburg-Landau vortex laboratory"};
    app.require_subcommand(1);
    std::string config_path;

    int d = 1, n = 4000, grid_n = 257, profile_n = 2000, diag_levels = 40,
        lift_levels = 24, max_iter = 50000;
    double R = 0, rmax = 20, tol = -1, slack_C = 1.0;
    std::string in, out;

    CLI::App* c_profile = app.add_subcommand("profile", "solve a radial vortex profile");
    c_profile->add_option("--d", d, "winding number");
    c_profile->add_option("--rmax", rmax, "truncation radius");
    c_profile->add_option("--n", n, "profile grid intervals");
    c_profile->add_option("--tol", tol, "shooting tolerance");
    c_profile->add_option("--out", out, "output prefix");
    c_profile->add_option("--field-out", in, "also synthesize a field CSV here");
    c_profile->add_option("--R", R, "window radius of the synthesized field");
    c_profile->add_option("--grid-n", grid_n, "grid size of the synthesized field");

    CLI::App* c_disk = app.add_subcommand("solve-disk", "relax the disk boundary-value problem");
    c_disk->add_option("--d", d, "winding number");
    c_disk->add_option("--R", R, "disk radius");
    c_disk->add_option("--n", grid_n, "grid size");
    c_disk->add_option("--profile-n", profile_n, "radial profile intervals for the seed");
    c_disk->add_option("--tol", tol, "relaxation residual tolerance");
    c_disk->add_option("--max-iter", max_iter, "relaxation sweep limit");
    c_disk->add_option("--out", out, "output prefix");

    CLI::App* c_diag = app.add_subcommand("diagnose", "symmetry diagnostics of a field");
    c_diag->add_option("--in", in, "input field CSV")->required();
    c_diag->add_option("--levels", diag_levels, "number of sampled levels");
    c_diag->add_option("--tol", tol, "verdict tolerance");
    c_diag->add_option("--slack", slack_C, "discretization slack constant");
    c_diag->add_option("--out", out, "output prefix");

    CLI::App* c_lift = app.add_subcommand("lift", "degree reduction of a disk field");
    c_lift->add_option("--in", in, "input field CSV")->required();
    c_lift->add_option("--d", d, "degree to divide out");
    c_lift->add_option("--levels", lift_levels, "kappa table levels");
    c_lift->add_option("--out", out, "output prefix");

    CLI::App* c_report = app.add_subcommand("report", "re-emit plot data from a report CSV");
    c_report->add_option("--in", in, "input report CSV")->required();
    c_report->add_option("--out", out, "output prefix");

    for (CLI::App* sub : {c_profile, c_disk, c_diag, c_lift, c_report})
        sub->add_option("--config", config_path, "flat key=value config file");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load_config(config_path);
        CLI::App* sub = app.get_subcommands().front();
        apply_config(sub, cfg);

        if (sub == c_profile)
            return run_profile(d, rmax, n, tol > 0 ? tol : 1e-12,
                               out.empty() ? "profile" : out, in, R, grid_n);
        if (sub == c_disk)
            return run_solve_disk(d, R > 0 ? R : 10.0, grid_n, profile_n,
                                  tol > 0 ? tol : 1e-4, max_iter,
                                  out.empty() ? "disk" : out);
        if (sub == c_diag)
            return run_diagnose(in, diag_levels, tol > 0 ? tol : 1e-2, slack_C,
                                out.empty() ? "diagnose" : out);
        if (sub == c_lift) return run_lift(in, d, lift_levels, out.empty() ? "lift" : out);
        return run_report(in, out.empty() ? "report" : out);
    } catch (const NotCurlFree& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const MultipleCriticalValues& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const NotLiftable& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const DegreeIllDefined& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

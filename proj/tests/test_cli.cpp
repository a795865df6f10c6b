#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "glv/io.hpp"
#include "glv/math_util.hpp"

using namespace glv;
namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "glv_cli_tests";

std::string p(const std::string& name) { return (work / name).string(); }

int run(const std::string& args) {
    const std::string cmd =
        std::string(GLV_CLI_PATH) + " " + args + " > " + p("stdout.txt") + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string summary_value(const std::string& path, const std::string& key) {
    for (const auto& [k, v] : read_key_values(path))
        if (k == key) return v;
    return {};
}

int line_count(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    int n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

/// Exactly curl-free sheared field u = -grad phi for phi(x) = psi(|S x|)
/// with psi' = -f and S = diag(1.5, 1).
void write_sheared_field(const std::string& path) {
    const RadialProfile pr = solve_profile(1, 40.0, 3000);
    UniformCubic f(pr.r.front(), pr.spacing(), pr.f);
    auto geom = GridGeometry::disk(15.0, 193);
    Field2D u(geom, 1);
    for (int j = 0; j < geom->n; ++j)
        for (int i = 0; i < geom->n; ++i) {
            if (!geom->inside(i, j)) continue;
            const Vec2 x = geom->node(i, j);
            const double q = std::hypot(1.5 * x[0], x[1]);
            const double s = q > 1e-12 ? f(q) / q : 0.0;
            const int k = geom->idx(i, j);
            u.re[k] = s * 2.25 * x[0];
            u.im[k] = s * x[1];
        }
    write_field_csv(path, u, ProblemKind::plane_vortex);
}

void write_two_zero_field(const std::string& path) {
    const RadialProfile pr = solve_profile(1, 40.0, 3000);
    auto geom = GridGeometry::disk(15.0, 193);
    const Field2D a = synthesize_field(pr, geom, 1, {3.0, 0.0});
    const Field2D b = synthesize_field(pr, geom, 1, {-3.0, 0.0});
    Field2D u(geom, 2);
    for (std::size_t k = 0; k < u.re.size(); ++k) {
        u.re[k] = a.re[k] * b.re[k] - a.im[k] * b.im[k];
        u.im[k] = a.re[k] * b.im[k] + a.im[k] * b.re[k];
    }
    write_field_csv(path, u, ProblemKind::plane_vortex);
}

}  // namespace

TEST_CASE("command-line pipelines") {
    fs::create_directories(work);

    SUBCASE("profile command writes the CSV and the summary") {
        REQUIRE(run("profile --d 1 --rmax 20 --n 1500 --out " + p("P")) == 0);
        CHECK(line_count(p("P.csv")) == 1502);  // header + n + 1 nodes
        const double q = std::stod(summary_value(p("P_summary.txt"), "quantization"));
        CHECK(q == doctest::Approx(1.0).epsilon(0.02));
    }

    SUBCASE("profile then diagnose on the synthesized vortex is symmetric") {
        REQUIRE(run("profile --d 1 --rmax 25 --n 2500 --field-out " + p("F.csv") +
                    " --R 15 --grid-n 193 --out " + p("P2")) == 0);
        REQUIRE(run("diagnose --in " + p("F.csv") + " --levels 24 --out " + p("D")) == 0);
        CHECK(summary_value(p("D_summary.txt"), "verdict") == "symmetric");
        CHECK(fs::exists(p("D_report.csv")));
        CHECK(fs::exists(p("D_plot_t_H.dat")));
        CHECK(fs::exists(p("D_plot_rho_H.dat")));
        CHECK(fs::exists(p("D_plot_t_deficit.dat")));

        SUBCASE("report command re-emits plot data") {
            REQUIRE(run("report --in " + p("D_report.csv") + " --out " + p("RR")) == 0);
            CHECK(line_count(p("RR_plot_t_H.dat")) == line_count(p("D_plot_t_H.dat")));
        }
    }

    SUBCASE("asymmetric input exits with the hypothesis-violation code") {
        write_sheared_field(p("S.csv"));
        CHECK(run("diagnose --in " + p("S.csv") + " --out " + p("DS")) == 2);
        CHECK(summary_value(p("DS_summary.txt"), "verdict") == "asymmetric");
    }

    SUBCASE("a field with two zeros exits with the hypothesis-violation code") {
        write_two_zero_field(p("Z.csv"));
        CHECK(run("diagnose --in " + p("Z.csv") + " --out " + p("DZ")) == 2);
    }

    SUBCASE("flags override the config file which overrides defaults") {
        {
            std::ofstream cfg(p("cfg.txt"), std::ios::binary);
            cfg << "# run defaults\nn=1200\nrmax=20\n";
        }
        REQUIRE(run("profile --config " + p("cfg.txt") + " --d 1 --out " + p("PC")) == 0);
        CHECK(line_count(p("PC.csv")) == 1202);  // n from the config file
        REQUIRE(run("profile --config " + p("cfg.txt") + " --d 1 --n 1500 --out " +
                    p("PF")) == 0);
        CHECK(line_count(p("PF.csv")) == 1502);  // flag wins
    }

    SUBCASE("missing input is a numerical failure, not a crash") {
        CHECK(run("diagnose --in " + p("nope.csv")) == 1);
    }

    SUBCASE("solve-disk then lift emits the kappa table") {
        REQUIRE(run("solve-disk --d 2 --R 3 --n 129 --tol 1e-4 --out " + p("K")) == 0);
        REQUIRE(run("lift --in " + p("K_field.csv") + " --d 2 --levels 16 --out " +
                    p("L")) == 0);
        CHECK(fs::exists(p("L_kappa.csv")));
        CHECK(line_count(p("L_kappa.csv")) > 10);
        const double spread = std::stod(
            summary_value(p("L_summary.txt"), "kappa_max_relative_spread"));
        CHECK(spread < 0.10);
    }
}

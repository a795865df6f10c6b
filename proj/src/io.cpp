#include "glv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace glv {
namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
    return out;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("malformed number: " + s);
    return v;
}

int to_int(const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw IoError("malformed integer: " + s);
    return v;
}

std::string kind_name(ProblemKind k) {
    return k == ProblemKind::plane_vortex ? "vortex" : "disk";
}

ProblemKind kind_from(const std::string& s) {
    if (s == "vortex") return ProblemKind::plane_vortex;
    if (s == "disk") return ProblemKind::disk_dirichlet;
    throw IoError("unknown field kind: " + s);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::symmetric: return "symmetric";
        case Verdict::asymmetric: return "asymmetric";
        default: return "inconclusive";
    }
}

KeyValues read_key_values(const std::string& path) {
    auto in = open_in(path);
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError("expected key=value: " + line);
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

void write_key_values(const std::string& path, const KeyValues& kv) {
    auto out = open_out(path);
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

void write_profile_csv(const std::string& path, const RadialProfile& p) {
    auto out = open_out(path);
    out << "r,f\n";
    for (std::size_t i = 0; i < p.r.size(); ++i)
        out << format_double(p.r[i]) << "," << format_double(p.f[i]) << "\n";
}

RadialProfile read_profile_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "r,f")
        throw IoError("bad profile header in " + path);
    RadialProfile p;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 2) throw IoError("bad profile row: " + line);
        p.r.push_back(to_double(cols[0]));
        p.f.push_back(to_double(cols[1]));
    }
    if (p.r.size() < 2) throw IoError("profile too short in " + path);
    return p;
}

void write_profile_meta(const std::string& path, const RadialProfile& p) {
    write_key_values(path,
                     {{"degree", std::to_string(p.degree)},
                      {"kind", p.kind == RadialProfile::Kind::disk ? "disk" : "half_line"},
                      {"r_max", format_double(p.r_max())},
                      {"n", std::to_string(p.r.size() - 1)},
                      {"slope_coeff", format_double(p.slope_coeff)},
                      {"residual", format_double(profile_residual(p))}});
}

void write_field_csv(const std::string& path, const Field2D& u, ProblemKind kind) {
    const GridGeometry& g = *u.geom;
    auto out = open_out(path);
    out << "n,h,R,d,kind\n"
        << g.n << "," << format_double(g.h) << "," << format_double(g.R) << ","
        << u.bc_degree << "," << kind_name(kind) << "\n"
        << "i,j,re,im\n";
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const int k = g.idx(i, j);
            out << i << "," << j << "," << format_double(u.re[k]) << ","
                << format_double(u.im[k]) << "\n";
        }
}

FieldFile read_field_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "n,h,R,d,kind")
        throw IoError("bad field header in " + path);
    if (!std::getline(in, line)) throw IoError("missing field header values in " + path);
    const auto hdr = split(line, ',');
    if (hdr.size() != 5) throw IoError("bad field header values: " + line);
    const int n = to_int(hdr[0]);
    const double h = to_double(hdr[1]);
    const double R = to_double(hdr[2]);
    const int d = to_int(hdr[3]);
    FieldFile ff;
    ff.kind = kind_from(hdr[4]);
    auto geom = GridGeometry::disk(R, n);
    if (std::abs(geom->h - h) > 1e-12 * (std::abs(h) + 1))
        throw IoError("inconsistent grid header (h does not match n, R) in " + path);
    ff.u = Field2D(geom, d);
    if (!std::getline(in, line) || trim(line) != "i,j,re,im")
        throw IoError("bad field row header in " + path);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 4) throw IoError("bad field row: " + line);
        const int i = to_int(cols[0]), j = to_int(cols[1]);
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw IoError("field row out of range: " + line);
        const int k = geom->idx(i, j);
        ff.u.re[k] = to_double(cols[2]);
        ff.u.im[k] = to_double(cols[3]);
    }
    return ff;
}

void write_report_csv(const std::string& path, const DiagnosticsReport& rep) {
    auto out = open_out(path);
    out << "t,rho,M,A,H_rearr,H_surface,pohozaev_residual,pohozaev_leading,"
           "deficit,r_under,r_over,curve_length,starshaped,starshaped_ok\n";
    for (const LevelRecord& r : rep.records) {
        out << format_double(r.t) << "," << format_double(r.rho) << ","
            << format_double(r.M) << "," << format_double(r.A) << ","
            << format_double(r.H_rearr) << "," << format_double(r.H_surface) << ","
            << format_double(r.pohozaev_residual) << ","
            << format_double(r.pohozaev_leading) << "," << format_double(r.deficit)
            << "," << format_double(r.r_under) << "," << format_double(r.r_over) << ","
            << format_double(r.curve_length) << "," << format_double(r.starshaped)
            << "," << (r.starshaped_ok ? 1 : 0) << "\n";
    }
}

std::vector<LevelRecord> read_report_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty report file " + path);
    std::vector<LevelRecord> recs;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 14) throw IoError("bad report row: " + line);
        LevelRecord r;
        r.t = to_double(cols[0]);
        r.rho = to_double(cols[1]);
        r.M = to_double(cols[2]);
        r.A = to_double(cols[3]);
        r.H_rearr = to_double(cols[4]);
        r.H_surface = to_double(cols[5]);
        r.pohozaev_residual = to_double(cols[6]);
        r.pohozaev_leading = to_double(cols[7]);
        r.deficit = to_double(cols[8]);
        r.r_under = to_double(cols[9]);
        r.r_over = to_double(cols[10]);
        r.curve_length = to_double(cols[11]);
        r.starshaped = to_double(cols[12]);
        r.starshaped_ok = to_int(cols[13]) != 0;
        recs.push_back(r);
    }
    return recs;
}

KeyValues report_summary(const DiagnosticsReport& rep) {
    const LevelRecord& last = rep.records.back();
    return {{"kind", kind_name(rep.kind)},
            {"verdict", verdict_name(rep.verdict)},
            {"center_x", format_double(rep.center[0])},
            {"center_y", format_double(rep.center[1])},
            {"t0", format_double(rep.t0)},
            {"n_levels", std::to_string(rep.records.size())},
            {"theta_constancy", rep.theta_constancy ? "1" : "0"},
            {"H_monotone", rep.H_monotone ? "1" : "0"},
            {"H_limit", format_double(rep.H_limit)},
            {"slack", format_double(rep.slack)},
            {"terminal_rho", format_double(last.rho)},
            {"terminal_t", format_double(last.t)}};
}

void write_plot(const std::string& path, const std::vector<double>& x,
                const std::vector<double>& y) {
    if (x.size() != y.size()) throw IoError("plot columns differ in length");
    auto out = open_out(path);
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_double(x[i]) << " " << format_double(y[i]) << "\n";
}

}  // namespace glv

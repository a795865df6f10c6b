#pragma once
// Text serialization: profile CSV + metadata sidecar, field CSV, report CSV,
// summary / config key=value files, and two-column plot data.  All files are
// written with LF endings and 17 significant digits so identical inputs give
// byte-identical outputs.

#include <string>
#include <utility>
#include <vector>

#include "glv/field_ops.hpp"
#include "glv/report.hpp"

namespace glv {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered key=value pairs (ordered so emission is deterministic).
using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);  ///< shortest %.17g rendering
std::string verdict_name(Verdict v);

/// Flat key=value text: one `key=value` per line, `#` comments and blank
/// lines skipped, whitespace around key and value trimmed.
KeyValues read_key_values(const std::string& path);
void write_key_values(const std::string& path, const KeyValues& kv);

/// Header `r,f`, one row per node.
void write_profile_csv(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_csv(const std::string& path);

/// Sidecar with degree, kind, r_max, n, slope_coeff, residual.
void write_profile_meta(const std::string& path, const RadialProfile& p);

/// Header rows `n,h,R,d,kind` / values, then `i,j,re,im` rows over non-exterior
/// nodes.  `kind` records which potential normalization the field calls for:
/// "vortex" (zero at the center) or "disk" (zero at the boundary infimum).
void write_field_csv(const std::string& path, const Field2D& u, ProblemKind kind);

struct FieldFile {
    Field2D u;
    ProblemKind kind = ProblemKind::plane_vortex;
};
FieldFile read_field_csv(const std::string& path);

/// One row per level, columns in LevelRecord order.
void write_report_csv(const std::string& path, const DiagnosticsReport& rep);
std::vector<LevelRecord> read_report_csv(const std::string& path);

/// Summary block of the report (verdict, center, t0, flags, limits).
KeyValues report_summary(const DiagnosticsReport& rep);

/// Two columns separated by one space, one row per point.
void write_plot(const std::string& path, const std::vector<double>& x,
                const std::vector<double>& y);

}  // namespace glv

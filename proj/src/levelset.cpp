#include "glv/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace glv {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Segment {
    int e0, e1;  // edge ids
};

// Edge id: a crossing lives on a unique grid edge.
inline int edge_id(int n, int i, int j, bool horizontal) {
    return (j * n + i) * 2 + (horizontal ? 0 : 1);
}

double phi_gradient_dot(const ScalarField& phi, Vec2 p, Vec2 dir) {
    const GridGeometry& g = *phi.geom;
    const double e = 0.5 * g.h;
    const double gx = (bilinear(g, phi.vals, {p[0] + e, p[1]}) -
                       bilinear(g, phi.vals, {p[0] - e, p[1]})) / (2 * e);
    const double gy = (bilinear(g, phi.vals, {p[0], p[1] + e}) -
                       bilinear(g, phi.vals, {p[0], p[1] - e})) / (2 * e);
    return gx * dir[0] + gy * dir[1];
}

}  // namespace

LevelSet extract_level_set(const ScalarField& phi, double t) {
    const GridGeometry& g = *phi.geom;
    const int n = g.n;

    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (g.inside(i, j)) {
                lo = std::min(lo, phi.at(i, j));
                hi = std::max(hi, phi.at(i, j));
            }
    if (!(t > lo && t < hi))
        throw std::invalid_argument("extract_level_set: t outside the range of phi");

    std::unordered_map<int, Vec2> crossing;
    std::vector<Segment> segs;
    std::unordered_map<int, std::vector<int>> incident;

    auto cross_point = [&](int i0, int j0, int i1, int j1) {
        const double a = phi.at(i0, j0), b = phi.at(i1, j1);
        const double s = (t - a) / (b - a);
        return Vec2{(1 - s) * g.x(i0) + s * g.x(i1), (1 - s) * g.y(j0) + s * g.y(j1)};
    };

    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            if (!g.inside(i, j) || !g.inside(i + 1, j) || !g.inside(i + 1, j + 1) ||
                !g.inside(i, j + 1))
                continue;
            const bool hot[4] = {phi.at(i, j) > t, phi.at(i + 1, j) > t,
                                 phi.at(i + 1, j + 1) > t, phi.at(i, j + 1) > t};
            const int count = hot[0] + hot[1] + hot[2] + hot[3];
            if (count == 0 || count == 4) continue;

            // edges in corner order: bottom, right, top, left
            const int eid[4] = {edge_id(n, i, j, true), edge_id(n, i + 1, j, false),
                                edge_id(n, i, j + 1, true), edge_id(n, i, j, false)};
            const bool crossed[4] = {hot[0] != hot[1], hot[1] != hot[2], hot[2] != hot[3],
                                     hot[3] != hot[0]};
            auto put = [&](int e) {
                if (crossing.count(e)) return;
                if (e == eid[0]) crossing[e] = cross_point(i, j, i + 1, j);
                else if (e == eid[1]) crossing[e] = cross_point(i + 1, j, i + 1, j + 1);
                else if (e == eid[2]) crossing[e] = cross_point(i, j + 1, i + 1, j + 1);
                else crossing[e] = cross_point(i, j, i, j + 1);
            };
            auto emit = [&](int ea, int eb) {
                put(ea);
                put(eb);
                incident[ea].push_back(int(segs.size()));
                incident[eb].push_back(int(segs.size()));
                segs.push_back({ea, eb});
            };

            if (count == 1 || count == 3) {
                int e[2], m = 0;
                for (int k = 0; k < 4; ++k)
                    if (crossed[k]) e[m++] = eid[k];
                emit(e[0], e[1]);
            } else if (crossed[0] && crossed[1] && crossed[2] && crossed[3]) {
                // saddle: resolve by the cell-center sample
                const double center = 0.25 * (phi.at(i, j) + phi.at(i + 1, j) +
                                              phi.at(i + 1, j + 1) + phi.at(i, j + 1));
                const bool center_hot = center > t;
                // hot[0]&&hot[2] vs hot[1]&&hot[3]
                if (hot[0] == center_hot) {
                    emit(eid[0], eid[1]);  // isolates corner 1
                    emit(eid[2], eid[3]);  // isolates corner 3
                } else {
                    emit(eid[0], eid[3]);  // isolates corner 0
                    emit(eid[1], eid[2]);  // isolates corner 2
                }
            } else {
                int e[2], m = 0;
                for (int k = 0; k < 4; ++k)
                    if (crossed[k]) e[m++] = eid[k];
                emit(e[0], e[1]);
            }
        }

    for (auto& [e, list] : incident)
        if (list.size() != 2)
            throw IncompleteLoop("extract_level_set: level curve leaves the mask at t = " +
                                 std::to_string(t));

    LevelSet ls;
    ls.t = t;
    std::vector<char> used(segs.size(), 0);
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        Loop loop;
        int edge = segs[s0].e0;
        int seg = int(s0);
        const int start_edge = edge;
        do {
            used[seg] = 1;
            loop.pts.push_back(crossing[edge]);
            edge = (segs[seg].e0 == edge) ? segs[seg].e1 : segs[seg].e0;
            const auto& inc = incident[edge];
            seg = (inc[0] == seg) ? inc[1] : inc[0];
        } while (edge != start_edge);
        loop.pts.push_back(loop.pts.front());
        if (loop.pts.size() < 4) continue;  // degenerate sliver

        // Orient so the right-hand normal points toward decreasing phi.
        {
            const int m = loop.segments();
            double sense = 0.0;
            const int step = std::max(1, m / 16);
            for (int s = 0; s < m; s += step) {
                const Vec2 tan = loop.pts[s + 1] - loop.pts[s];
                const Vec2 nu = {tan[1], -tan[0]};
                sense += phi_gradient_dot(phi, loop.midpoint(s), nu);
            }
            if (sense > 0) std::reverse(loop.pts.begin(), loop.pts.end());
        }
        for (int s = 0; s < loop.segments(); ++s) {
            const Vec2 tan = loop.pts[s + 1] - loop.pts[s];
            const double len = norm(tan);
            loop.seglen.push_back(len);
            loop.normals.push_back(len > 0 ? (1.0 / len) * Vec2{tan[1], -tan[0]} : Vec2{0, 0});
            ls.perimeter += len;
        }
        double signed_area = 0.0;
        for (int s = 0; s < loop.segments(); ++s)
            signed_area += loop.pts[s][0] * loop.pts[s + 1][1] - loop.pts[s + 1][0] * loop.pts[s][1];
        ls.area += 0.5 * signed_area;
        ls.loops.push_back(std::move(loop));
    }
    ls.area = std::abs(ls.area);
    return ls;
}

double isoperimetric_deficit(const LevelSet& ls) {
    return ls.perimeter * ls.perimeter - 4.0 * std::numbers::pi * ls.area;
}

RadiiComparison radii_comparison(const LevelSet& ls, Vec2 x0, double slack) {
    RadiiComparison rc;
    rc.r_under = 1e300;
    for (const Loop& loop : ls.loops)
        for (int s = 0; s < loop.segments(); ++s) {
            const double d = norm(loop.pts[s] - x0);
            rc.r_under = std::min(rc.r_under, d);
            rc.r_over = std::max(rc.r_over, d);
        }
    rc.rho = std::sqrt(ls.area / std::numbers::pi);
    rc.ordered = rc.r_over >= rc.rho - slack && rc.rho >= rc.r_under - slack;
    return rc;
}

double starshaped_integral(const LevelSet& ls, Vec2 x0) {
    double total = 0.0;
    for (const Loop& loop : ls.loops)
        for (int s = 0; s < loop.segments(); ++s) {
            // Zero-length segments (a crossing exactly at a node) carry no
            // arclength and an undefined normal; they contribute nothing.
            if (loop.seglen[s] < 1e-12) continue;
            const double proj = dot(loop.midpoint(s) - x0, loop.normals[s]);
            if (proj <= 0)
                throw NotStarShaped("starshaped_integral: curve not star-shaped about x0");
            total += loop.seglen[s] / proj;
        }
    return total - two_pi;
}

}  // namespace glv

#include "glv/grid.hpp"

namespace glv {

std::shared_ptr<const GridGeometry> GridGeometry::disk(double R, int n, Vec2 center) {
    if (n < 8 || R <= 0) throw std::invalid_argument("GridGeometry::disk: bad parameters");
    auto g = std::make_shared<GridGeometry>();
    g->n = n;
    g->R = R;
    g->center = center;
    g->h = 2.0 * R / double(n - 1);
    g->mask.assign(std::size_t(n) * n, NodeClass::exterior);
    const double rtol = R * (1.0 + 1e-12);
    auto in = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= n || j >= n) return false;
        const double dx = (i - 0.5 * (n - 1)) * g->h;
        const double dy = (j - 0.5 * (n - 1)) * g->h;
        return std::hypot(dx, dy) <= rtol;
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (!in(i, j)) continue;
            const bool edge = !in(i - 1, j) || !in(i + 1, j) || !in(i, j - 1) || !in(i, j + 1);
            g->mask[g->idx(i, j)] = edge ? NodeClass::boundary : NodeClass::interior;
        }
    return g;
}

namespace {

// Nearest in-mask value, used to patch exterior stencil corners.
double patched(const GridGeometry& g, const std::vector<double>& v,
               const std::vector<double>* ext, int i, int j) {
    const int ci = std::min(g.n - 1, std::max(0, i));
    const int cj = std::min(g.n - 1, std::max(0, j));
    if (g.at(ci, cj) != NodeClass::exterior) return v[g.idx(ci, cj)];
    if (ext) return (*ext)[g.idx(ci, cj)];
    // walk toward the grid center until we hit the mask
    int ii = ci, jj = cj;
    const int mid = g.n / 2;
    for (int k = 0; k < g.n; ++k) {
        ii += (mid > ii) - (mid < ii);
        jj += (mid > jj) - (mid < jj);
        if (g.at(ii, jj) != NodeClass::exterior) return v[g.idx(ii, jj)];
    }
    return 0.0;
}

}  // namespace

double bilinear(const GridGeometry& g, const std::vector<double>& v, Vec2 p,
                const std::vector<double>* ext) {
    const double u = (p[0] - g.center[0]) / g.h + 0.5 * (g.n - 1);
    const double w = (p[1] - g.center[1]) / g.h + 0.5 * (g.n - 1);
    int i = int(std::floor(u)), j = int(std::floor(w));
    i = std::min(g.n - 2, std::max(0, i));
    j = std::min(g.n - 2, std::max(0, j));
    const double s = u - i, t = w - j;
    const double v00 = patched(g, v, ext, i, j), v10 = patched(g, v, ext, i + 1, j);
    const double v01 = patched(g, v, ext, i, j + 1), v11 = patched(g, v, ext, i + 1, j + 1);
    return (1 - s) * (1 - t) * v00 + s * (1 - t) * v10 + (1 - s) * t * v01 + s * t * v11;
}

double bicubic(const GridGeometry& g, const std::vector<double>& v, Vec2 p) {
    const double u = (p[0] - g.center[0]) / g.h + 0.5 * (g.n - 1);
    const double w = (p[1] - g.center[1]) / g.h + 0.5 * (g.n - 1);
    int i = int(std::floor(u)), j = int(std::floor(w));
    i = std::min(g.n - 2, std::max(0, i));
    j = std::min(g.n - 2, std::max(0, j));
    for (int dj = -1; dj <= 2; ++dj)
        for (int di = -1; di <= 2; ++di)
            if (g.at(i + di, j + dj) == NodeClass::exterior) return bilinear(g, v, p);

    const double s = u - i, t = w - j;
    auto cr = [](double m1, double z0, double z1, double z2, double x) {
        // Catmull-Rom through z0, z1 with centered slopes
        const double a0 = z0;
        const double a1 = 0.5 * (z1 - m1);
        const double a2 = m1 - 2.5 * z0 + 2 * z1 - 0.5 * z2;
        const double a3 = -0.5 * m1 + 1.5 * z0 - 1.5 * z1 + 0.5 * z2;
        return a0 + x * (a1 + x * (a2 + x * a3));
    };
    double col[4];
    for (int dj = -1; dj <= 2; ++dj) {
        const double* row = &v[g.idx(0, j + dj)];
        col[dj + 1] = cr(row[i - 1], row[i], row[i + 1], row[i + 2], s);
    }
    return cr(col[0], col[1], col[2], col[3], t);
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
    const GridGeometry& g = *f.geom;
    ScalarField gx(f.geom), gy(f.geom);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            auto diff = [&](int di, int dj) {
                const bool lo = g.inside(i - di, j - dj), hi = g.inside(i + di, j + dj);
                if (lo && hi)
                    return (f.at(i + di, j + dj) - f.at(i - di, j - dj)) / (2 * g.h);
                if (hi) return (f.at(i + di, j + dj) - f.at(i, j)) / g.h;
                if (lo) return (f.at(i, j) - f.at(i - di, j - dj)) / g.h;
                return 0.0;
            };
            gx.at(i, j) = diff(1, 0);
            gy.at(i, j) = diff(0, 1);
        }
    return {std::move(gx), std::move(gy)};
}

std::pair<ScalarField, ScalarField> gradient4(const ScalarField& f) {
    const GridGeometry& g = *f.geom;
    auto [gx, gy] = gradient(f);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            auto fits = [&](int di, int dj) {
                return g.inside(i - 2 * di, j - 2 * dj) && g.inside(i + 2 * di, j + 2 * dj);
            };
            if (fits(1, 0))
                gx.at(i, j) = (f.at(i - 2, j) - 8 * f.at(i - 1, j) + 8 * f.at(i + 1, j) -
                               f.at(i + 2, j)) /
                              (12 * g.h);
            if (fits(0, 1))
                gy.at(i, j) = (f.at(i, j - 2) - 8 * f.at(i, j - 1) + 8 * f.at(i, j + 1) -
                               f.at(i, j + 2)) /
                              (12 * g.h);
        }
    return {std::move(gx), std::move(gy)};
}

}  // namespace glv

#include "glv/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "glv/math_util.hpp"

namespace glv {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

Field2D synthesize_field(const RadialProfile& p, GeometryPtr geom, int d_signed, Vec2 origin) {
    const int d = d_signed == 0 ? p.degree : d_signed;
    if (std::abs(d) != p.degree)
        throw std::invalid_argument("synthesize_field: |d| must match the profile degree");
    const GridGeometry& g = *geom;
    const double reach = g.R + norm(origin - g.center) - 1e-9 * g.R;
    if (p.r_max() < reach)
        throw std::invalid_argument("synthesize_field: profile too short for this grid");

    UniformCubic fi(p.r.front(), p.spacing(), p.f);
    Field2D u(geom, d);
    const bool snap = norm(origin - g.center) < 1e-12 * g.R;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const NodeClass c = g.at(i, j);
            if (c == NodeClass::exterior) continue;
            const Vec2 q = g.node(i, j) - origin;
            const double rr = norm(q);
            const int k = g.idx(i, j);
            const double th = std::atan2(q[1], q[0]);
            double mod = rr < 1e-14 ? 0.0 : fi(rr);
            if (snap && c == NodeClass::boundary) mod = 1.0;  // exact Dirichlet phase
            u.re[k] = mod * std::cos(d * th);
            u.im[k] = mod * std::sin(d * th);
        }
    return u;
}

ScalarField gl_residual(const Field2D& u) {
    const GridGeometry& g = *u.geom;
    ScalarField res(u.geom);
    const double h2 = g.h * g.h;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (g.at(i, j) != NodeClass::interior) continue;
            const int k = g.idx(i, j);
            const double m2 = u.re[k] * u.re[k] + u.im[k] * u.im[k];
            const double lr = (u.re[g.idx(i - 1, j)] + u.re[g.idx(i + 1, j)] +
                               u.re[g.idx(i, j - 1)] + u.re[g.idx(i, j + 1)] - 4 * u.re[k]) / h2;
            const double li = (u.im[g.idx(i - 1, j)] + u.im[g.idx(i + 1, j)] +
                               u.im[g.idx(i, j - 1)] + u.im[g.idx(i, j + 1)] - 4 * u.im[k]) / h2;
            res.vals[k] = std::hypot(-lr - u.re[k] * (1 - m2), -li - u.im[k] * (1 - m2));
        }
    return res;
}

double max_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.vals) m = std::max(m, std::abs(v));
    return m;
}

RelaxResult relax_solve(const Field2D& u0, int max_iter, double tol, double omega) {
    RelaxResult out;
    out.u = u0;
    Field2D& u = out.u;
    const GridGeometry& g = *u.geom;
    const double h2 = g.h * g.h;

    std::vector<int> nodes;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (g.at(i, j) == NodeClass::interior) nodes.push_back(g.idx(i, j));

    double best = max_norm(gl_residual(u));
    Field2D best_u = u;
    std::deque<double> history{best};

    for (int sweep = 0; sweep < max_iter; ++sweep) {
        for (int k : nodes) {
            const double sr = u.re[k - 1] + u.re[k + 1] + u.re[k - g.n] + u.re[k + g.n];
            const double si = u.im[k - 1] + u.im[k + 1] + u.im[k - g.n] + u.im[k + g.n];
            const double m2 = u.re[k] * u.re[k] + u.im[k] * u.im[k];
            const double den = 4.0 - h2 * (1.0 - m2);
            u.re[k] += omega * (sr / den - u.re[k]);
            u.im[k] += omega * (si / den - u.im[k]);
        }
        out.sweeps = sweep + 1;
        const double res = max_norm(gl_residual(u));
        if (res < best) {
            best = res;
            best_u = u;
        }
        if (res < tol) {
            out.converged = true;
            out.residual = res;
            return out;
        }
        history.push_back(res);
        if (history.size() > 100) {
            if (res > 10.0 * history.front()) {
                out.diverged = true;
                break;
            }
            history.pop_front();
        }
    }
    out.u = best_u;
    out.residual = best;
    return out;
}

int degree(const Field2D& u, double radius) {
    const GridGeometry& g = *u.geom;
    const int m = 8 * int(std::ceil(radius / g.h));
    double total = 0.0;
    double prev_re = 0, prev_im = 0;
    for (int k = 0; k <= m; ++k) {
        const double th = two_pi * double(k % m) / double(m);
        const Vec2 p = {g.center[0] + radius * std::cos(th), g.center[1] + radius * std::sin(th)};
        const double re = bilinear(g, u.re, p);
        const double im = bilinear(g, u.im, p);
        if (std::hypot(re, im) < 0.2)
            throw DegreeIllDefined("degree: |u| < 0.2 on the sampling circle");
        if (k > 0) total += std::atan2(prev_re * im - prev_im * re, prev_re * re + prev_im * im);
        prev_re = re;
        prev_im = im;
    }
    return int(std::lround(total / two_pi));
}

ZeroFindResult find_zeros(const Field2D& u, double thresh) {
    if (thresh <= 0) throw std::invalid_argument("find_zeros: thresh > 0 required");
    const GridGeometry& g = *u.geom;
    ZeroFindResult out;
    std::vector<char> seen(g.mask.size(), 0);
    bool any = false;
    for (int j0 = 0; j0 < g.n; ++j0)
        for (int i0 = 0; i0 < g.n; ++i0) {
            const int k0 = g.idx(i0, j0);
            if (seen[k0] || !g.inside(i0, j0) || u.modulus(i0, j0) >= thresh) continue;
            any = true;
            // flood fill the component
            std::vector<std::pair<int, int>> comp, stack{{i0, j0}};
            seen[k0] = 1;
            bool touches_edge = false;
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                comp.push_back({i, j});
                if (g.at(i, j) == NodeClass::boundary) touches_edge = true;
                for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                    const int ii = i + di, jj = j + dj;
                    if (!g.inside(ii, jj)) continue;
                    const int kk = g.idx(ii, jj);
                    if (!seen[kk] && u.modulus(ii, jj) < thresh) {
                        seen[kk] = 1;
                        stack.push_back({ii, jj});
                    }
                }
            }
            if (touches_edge) {
                ++out.discarded_boundary;
                continue;
            }
            double wsum = 0, cx = 0, cy = 0;
            for (auto [i, j] : comp) {
                const double w = thresh - u.modulus(i, j);
                wsum += w;
                cx += w * g.x(i);
                cy += w * g.y(j);
            }
            Vec2 z = {cx / wsum, cy / wsum};
            // Newton refinement on the interpolated (re, im) pair
            const double fd = 0.25 * g.h;
            for (int it = 0; it < 10; ++it) {
                const double fr = bilinear(g, u.re, z), fi = bilinear(g, u.im, z);
                const double jrx = (bilinear(g, u.re, {z[0] + fd, z[1]}) -
                                    bilinear(g, u.re, {z[0] - fd, z[1]})) / (2 * fd);
                const double jry = (bilinear(g, u.re, {z[0], z[1] + fd}) -
                                    bilinear(g, u.re, {z[0], z[1] - fd})) / (2 * fd);
                const double jix = (bilinear(g, u.im, {z[0] + fd, z[1]}) -
                                    bilinear(g, u.im, {z[0] - fd, z[1]})) / (2 * fd);
                const double jiy = (bilinear(g, u.im, {z[0], z[1] + fd}) -
                                    bilinear(g, u.im, {z[0], z[1] - fd})) / (2 * fd);
                const double det = jrx * jiy - jry * jix;
                if (std::abs(det) < 1e-14) break;
                double dx = (-fr * jiy + fi * jry) / det;
                double dy = (-jrx * fi + jix * fr) / det;
                const double len = std::hypot(dx, dy);
                if (len > g.h) {
                    dx *= g.h / len;
                    dy *= g.h / len;
                }
                z[0] += dx;
                z[1] += dy;
                if (len < 1e-12) break;
            }
            out.zeros.push_back(z);
        }
    out.under_resolved = !any;
    return out;
}

namespace {

ScalarField cross_derivative(const Field2D& u, bool curl) {
    const GridGeometry& g = *u.geom;
    ScalarField out(u.geom);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (g.at(i, j) != NodeClass::interior) continue;
            const double dxim = (u.im[g.idx(i + 1, j)] - u.im[g.idx(i - 1, j)]) / (2 * g.h);
            const double dyre = (u.re[g.idx(i, j + 1)] - u.re[g.idx(i, j - 1)]) / (2 * g.h);
            const double dxre = (u.re[g.idx(i + 1, j)] - u.re[g.idx(i - 1, j)]) / (2 * g.h);
            const double dyim = (u.im[g.idx(i, j + 1)] - u.im[g.idx(i, j - 1)]) / (2 * g.h);
            out.vals[g.idx(i, j)] = curl ? dxim - dyre : dxre + dyim;
        }
    return out;
}

}  // namespace

ScalarField curl_field(const Field2D& u) { return cross_derivative(u, true); }
ScalarField div_field(const Field2D& u) { return cross_derivative(u, false); }

Field2D rotate(const Field2D& u, double beta) {
    Field2D v = u;
    const double c = std::cos(beta), s = std::sin(beta);
    for (std::size_t k = 0; k < v.re.size(); ++k) {
        const double re = u.re[k], im = u.im[k];
        v.re[k] = c * re - s * im;
        v.im[k] = s * re + c * im;
    }
    return v;
}

double best_rotation(const Field2D& u) {
    const ScalarField c = curl_field(u);
    const ScalarField s = div_field(u);
    double A = 0, B = 0, C = 0;
    for (std::size_t k = 0; k < c.vals.size(); ++k) {
        A += c.vals[k] * c.vals[k];
        B += c.vals[k] * s.vals[k];
        C += s.vals[k] * s.vals[k];
    }
    const double amp = std::hypot(0.5 * (A - C), B);
    if (amp < 1e-14 * (A + C) || A + C == 0.0) return 0.0;  // flat objective
    const double psi = std::atan2(B, 0.5 * (A - C));
    double beta = 0.5 * (psi + std::numbers::pi);
    // pick, of beta and beta + pi, the rotation with outward radial mean
    const GridGeometry& g = *u.geom;
    const double cb = std::cos(beta), sb = std::sin(beta);
    double radial = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (g.at(i, j) != NodeClass::interior) continue;
            const int k = g.idx(i, j);
            const Vec2 q = g.node(i, j) - g.center;
            const double rr = norm(q);
            if (rr < g.h) continue;
            radial += ((cb * u.re[k] - sb * u.im[k]) * q[0] +
                       (sb * u.re[k] + cb * u.im[k]) * q[1]) / rr;
        }
    if (radial < 0) beta += std::numbers::pi;
    beta = std::fmod(beta, two_pi);
    if (beta < 0) beta += two_pi;
    return beta;
}

ScalarField potential(const Field2D& u, int sign, Vec2 start, PotentialNormalization nrm) {
    const GridGeometry& g = *u.geom;

    // Precondition: the field must be (discretely) curl-free away from the
    // boundary ring, where the snapped Dirichlet data can kink the stencil.
    {
        const ScalarField c = curl_field(u);
        double scale = 1.0;
        for (std::size_t k = 0; k < u.re.size(); ++k)
            scale = std::max(scale, std::hypot(u.re[k], u.im[k]));
        double worst = 0.0;
        for (int j = 2; j < g.n - 2; ++j)
            for (int i = 2; i < g.n - 2; ++i) {
                bool deep = true;
                for (int dj = -1; dj <= 1 && deep; ++dj)
                    for (int di = -1; di <= 1; ++di)
                        if (g.at(i + di, j + dj) != NodeClass::interior) { deep = false; break; }
                if (deep) worst = std::max(worst, std::abs(c.at(i, j)));
            }
        if (worst > 10.0 * g.h * g.h * scale)
            throw NotCurlFree("potential: field is not curl-free (|curl| = " +
                              std::to_string(worst) + ")");
    }

    // Start node: nearest in-mask node to the requested point.
    int is = 0, js = 0;
    double bestd = 1e300;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const double d2 = norm(g.node(i, j) - start);
            if (d2 < bestd) {
                bestd = d2;
                is = i;
                js = j;
            }
        }

    // Row/column trapezoid prefix integrals with exterior nodes clamped to
    // the nearest in-row (in-column) value.
    const int n = g.n;
    auto clamped = [&](const std::vector<double>& v, int i, int j, bool row) {
        if (g.inside(i, j)) return v[g.idx(i, j)];
        if (row) {
            for (int s = 1; s < n; ++s) {
                if (i - s >= 0 && g.inside(i - s, j)) return v[g.idx(i - s, j)];
                if (i + s < n && g.inside(i + s, j)) return v[g.idx(i + s, j)];
            }
        } else {
            for (int s = 1; s < n; ++s) {
                if (j - s >= 0 && g.inside(i, j - s)) return v[g.idx(i, j - s)];
                if (j + s < n && g.inside(i, j + s)) return v[g.idx(i, j + s)];
            }
        }
        return 0.0;
    };
    std::vector<double> rowint(std::size_t(n) * n, 0.0), colint(std::size_t(n) * n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 1; i < n; ++i)
            rowint[g.idx(i, j)] = rowint[g.idx(i - 1, j)] +
                0.5 * g.h * (clamped(u.re, i - 1, j, true) + clamped(u.re, i, j, true));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            colint[g.idx(i, j)] = colint[g.idx(i, j - 1)] +
                0.5 * g.h * (clamped(u.im, i, j - 1, false) + clamped(u.im, i, j, false));

    ScalarField phi(u.geom);
    const double sgn = -double(sign);
    double worst_pd = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (!g.inside(i, j)) continue;
            const double p1 = sgn * ((rowint[g.idx(i, js)] - rowint[g.idx(is, js)]) +
                                     (colint[g.idx(i, j)] - colint[g.idx(i, js)]));
            const double p2 = sgn * ((colint[g.idx(is, j)] - colint[g.idx(is, js)]) +
                                     (rowint[g.idx(i, j)] - rowint[g.idx(is, j)]));
            phi.at(i, j) = 0.5 * (p1 + p2);
            const double rr = norm(g.node(i, j) - g.center);
            if (rr < g.R - 2 * g.h) worst_pd = std::max(worst_pd, std::abs(p1 - p2));
        }
    if (worst_pd > g.h * g.R)
        throw NotCurlFree("potential: path-dependent integration (max gap = " +
                          std::to_string(worst_pd) + ")");

    if (nrm == PotentialNormalization::inf_zero) {
        double lo = 1e300;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (g.inside(i, j)) lo = std::min(lo, phi.at(i, j));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (g.inside(i, j)) phi.at(i, j) -= lo;
    }
    return phi;
}

ZeroFit local_zero_fit(const Field2D& u, Vec2 x0, double fit_radius) {
    const GridGeometry& g = *u.geom;
    if (fit_radius < 5 * g.h)
        throw std::invalid_argument("local_zero_fit: fit_radius >= 5h required");

    std::vector<std::complex<double>> zs, us;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            const Vec2 q = g.node(i, j) - x0;
            if (norm(q) > fit_radius) continue;
            zs.emplace_back(q[0], q[1]);
            us.emplace_back(u.re[g.idx(i, j)], u.im[g.idx(i, j)]);
        }

    double unorm = 0.0;
    for (auto& w : us) unorm += std::norm(w);

    ZeroFit best;
    best.residual = 1e300;
    for (int m = 1; m <= 6; ++m) {
        std::complex<double> g11 = 0, g12 = 0, r1 = 0, r2 = 0;
        for (std::size_t k = 0; k < zs.size(); ++k) {
            const std::complex<double> zm = std::pow(zs[k], m);
            const std::complex<double> zbm = std::conj(zm);
            g11 += std::norm(zm);
            g12 += std::conj(zm) * zbm;
            r1 += std::conj(zm) * us[k];
            r2 += std::conj(zbm) * us[k];
        }
        const std::complex<double> g21 = std::conj(g12);
        const std::complex<double> det = g11 * g11 - g12 * g21;
        if (std::abs(det) < 1e-30) continue;
        const std::complex<double> a1 = (g11 * r1 - g12 * r2) / det;
        const std::complex<double> a2 = (g11 * r2 - g21 * r1) / det;
        double miss = 0.0;
        for (std::size_t k = 0; k < zs.size(); ++k) {
            const std::complex<double> zm = std::pow(zs[k], m);
            miss += std::norm(us[k] - a1 * zm - a2 * std::conj(zm));
        }
        const double rel = std::sqrt(miss / unorm);
        if (rel < best.residual) {
            best.residual = rel;
            best.degree_est = m;
            best.a1 = a1;
            best.a2 = a2;
        }
    }
    if (best.residual >= 0.5)
        throw std::runtime_error("local_zero_fit: no monomial pair fits (zero not isolated?)");
    best.location = x0;
    best.conjugate_dominant = std::abs(best.a2) >= std::abs(best.a1);
    return best;
}

}  // namespace glv

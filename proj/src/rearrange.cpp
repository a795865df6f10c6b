#include "glv/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glv {
namespace {

constexpr double pi = std::numbers::pi;

// 1-D quadratic peak refinement from three samples; returns the offset in
// grid units, clamped to half a cell.
double peak_offset(double lo, double mid, double hi) {
    const double denom = lo - 2 * mid + hi;
    if (denom >= 0) return 0.0;  // not concave here
    double s = 0.5 * (lo - hi) / denom;
    return std::min(0.5, std::max(-0.5, s));
}

}  // namespace

RadialRearrangement sweep_levels(const ScalarField& phi, int n_levels, double area_cap) {
    const GridGeometry& g = *phi.geom;
    if (n_levels < 4) throw std::invalid_argument("sweep_levels: need at least 4 levels");
    if (!(area_cap > 0 && area_cap < 1))
        throw std::invalid_argument("sweep_levels: area_cap outside (0,1)");

    RadialRearrangement rr;

    // Peak node and quadratic refinement of center and critical value.
    int pi_ = -1, pj_ = -1;
    double pmax = -1e300;
    std::vector<double> samples;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.inside(i, j)) continue;
            samples.push_back(phi.at(i, j));
            if (phi.at(i, j) > pmax) pmax = phi.at(i, j), pi_ = i, pj_ = j;
        }
    rr.center = {g.x(pi_), g.y(pj_)};
    rr.t0 = pmax;
    double peak_curv = 0.0;  // geometric-mean concavity -phi'' at the peak
    if (g.inside(pi_ - 1, pj_) && g.inside(pi_ + 1, pj_) && g.inside(pi_, pj_ - 1) &&
        g.inside(pi_, pj_ + 1)) {
        const double sx =
            peak_offset(phi.at(pi_ - 1, pj_), pmax, phi.at(pi_ + 1, pj_));
        const double sy =
            peak_offset(phi.at(pi_, pj_ - 1), pmax, phi.at(pi_, pj_ + 1));
        rr.center = {g.x(pi_) + sx * g.h, g.y(pj_) + sy * g.h};
        const double cx = phi.at(pi_ - 1, pj_) - 2 * pmax + phi.at(pi_ + 1, pj_);
        const double cy = phi.at(pi_, pj_ - 1) - 2 * pmax + phi.at(pi_, pj_ + 1);
        rr.t0 = pmax - 0.5 * (cx * sx * sx + cy * sy * sy);
        if (cx < 0 && cy < 0) peak_curv = std::sqrt(cx * cy) / (g.h * g.h);
    }

    // Level values from node-count quantiles of the super-level area,
    // plus geometrically shrinking areas under the smallest quantile so the
    // rho -> 0 end is resolved.
    std::sort(samples.begin(), samples.end(), std::greater<>());
    const std::size_t N = samples.size();
    std::vector<double> fractions;
    for (int k = 1; k <= n_levels; ++k) fractions.push_back(area_cap * k / n_levels);
    for (int m = 1; m <= 12; ++m) {
        const double q = area_cap / n_levels * std::pow(std::numbers::sqrt2, -m);
        if (q * double(N) >= 128) fractions.push_back(q);  // keep loops resolvable
    }
    std::sort(fractions.begin(), fractions.end());

    std::vector<double> tvals;
    for (double q : fractions) {
        std::size_t idx = std::size_t(q * double(N));
        idx = std::min(idx, N - 1);
        const double tv = samples[idx];
        if (tv >= rr.t0) continue;
        if (!tvals.empty() && tv >= tvals.back()) continue;  // duplicate quantile
        tvals.push_back(tv);
    }
    std::sort(tvals.begin(), tvals.end(), std::greater<>());

    std::size_t clipped = 0;
    for (double tv : tvals) {
        LevelSet ls;
        try {
            ls = extract_level_set(phi, tv);
        } catch (const IncompleteLoop&) {
            ++clipped;  // deeper curves cut off by the mask are simply not swept
            continue;
        }
        const double r = std::sqrt(ls.area / pi);
        if (!rr.rho.empty() && r <= rr.rho.back())
            throw MultipleCriticalValues("sweep_levels: area map not strictly monotone");
        rr.t.push_back(tv);
        rr.rho.push_back(r);
        rr.levels.push_back(std::move(ls));
    }
    if (rr.t.size() < 4) {
        if (clipped > 0)
            throw IncompleteLoop("sweep_levels: level curves leave the mask");
        throw std::invalid_argument("sweep_levels: too few usable levels");
    }
    if (rr.levels.front().loops.size() != 1)
        throw MultipleCriticalValues("sweep_levels: top level splits into several loops");

    // Fill the unsampled gap below the smallest loop with the quadratic peak
    // model t0 - curv r^2 / 2; without these knots the interpolant takes a
    // secant slope at r = 0 where the true slope vanishes.
    std::vector<double> xs = {0.0}, ys = {rr.t0};
    if (peak_curv > 0) {
        for (double frac : {1.0 / 3.0, 2.0 / 3.0}) {
            const double r = frac * rr.rho.front();
            const double tv = rr.t0 - 0.5 * peak_curv * r * r;
            if (tv > rr.t.front() && tv < ys.back()) {
                xs.push_back(r);
                ys.push_back(tv);
            }
        }
    }
    xs.insert(xs.end(), rr.rho.begin(), rr.rho.end());
    ys.insert(ys.end(), rr.t.begin(), rr.t.end());
    rr.phi_star = MonotoneCubic(std::move(xs), std::move(ys));
    return rr;
}

NonlinearityG reconstruct_nonlinearity(const ScalarField& phi, const RadialRearrangement& rr,
                                       std::function<double(Vec2)> weight) {
    const GridGeometry& g = *phi.geom;
    auto [gx, gy] = gradient4(phi);

    NonlinearityG ng;
    const std::size_t m = rr.t.size();
    ng.t.resize(m);
    ng.theta.resize(m);
    ng.theta_spread.resize(m);

    // Levels ascending in t (reverse of the sweep order).
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t src = m - 1 - k;
        const LevelSet& ls = rr.levels[src];
        double wsum = 0, qsum = 0, q2sum = 0;
        for (const Loop& loop : ls.loops)
            for (int s = 0; s < loop.segments(); ++s) {
                const Vec2 p = loop.midpoint(s);
                const double dgx = bicubic(g, gx.vals, p);
                const double dgy = bicubic(g, gy.vals, p);
                double q = 1.0 - (dgx * dgx + dgy * dgy);
                if (weight) q *= weight(p);
                const double w = loop.seglen[s];
                wsum += w;
                qsum += w * q;
                q2sum += w * q * q;
            }
        const double mean = qsum / wsum;
        const double var = std::max(0.0, q2sum / wsum - mean * mean);
        ng.t[k] = rr.t[src];
        ng.theta[k] = mean;
        ng.theta_spread[k] = std::sqrt(var);
    }

    int violations = 0;
    for (std::size_t k = 0; k < m; ++k)
        if (ng.theta_spread[k] > std::max(0.2 * std::abs(ng.theta[k]), 0.01)) ++violations;
    ng.spread_ok = violations * 10 <= int(m);

    std::vector<double> ts(ng.t), th(ng.theta);
    if (!weight) {
        // The gradient vanishes at the peak, so theta(t0) = 1 exactly;
        // anchoring it removes the extrapolation gap above the top level.
        ts.push_back(rr.t0);
        th.push_back(1.0);
    }
    ng.theta_spline = MonotoneCubic(ts, th);

    // Interpolant used for the quadrature below.  Positive theta decaying
    // like 1/t^2 interpolates far better in the log domain, so use that when
    // the data allows; fields violating the hypotheses can have theta <= 0.
    const bool log_ok = *std::min_element(th.begin(), th.end()) > 0;
    MonotoneCubic log_spline;
    if (log_ok) {
        std::vector<double> lt(th.size());
        for (std::size_t i = 0; i < th.size(); ++i) lt[i] = std::log(th[i]);
        log_spline = MonotoneCubic(ts, std::move(lt));
    }
    auto theta_q = [&](double tv) {
        return log_ok ? std::exp(log_spline(tv)) : ng.theta_spline(tv);
    };

    // Seed g(t_min) = -lap phi sampled on the outermost level curve (the
    // equation -lap phi = g(phi) holds there directly).  For the plane
    // vortex this realizes the far-field limit t g(t) -> -1 without the
    // O(1/t^2) offset of the bare -1/t; on disk problems it supplies the
    // nonzero rim value, and in the weighted case no adjustment is needed.
    double g_seed = 0.0;
    {
        ScalarField lap(phi.geom);
        const double h2 = g.h * g.h;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                if (!g.inside(i, j) || !g.inside(i - 1, j) || !g.inside(i + 1, j) ||
                    !g.inside(i, j - 1) || !g.inside(i, j + 1))
                    continue;
                lap.at(i, j) = -(phi.at(i - 1, j) + phi.at(i + 1, j) +
                                 phi.at(i, j - 1) + phi.at(i, j + 1) -
                                 4 * phi.at(i, j)) /
                               h2;
            }
        double wsum = 0, lsum = 0;
        for (const Loop& loop : rr.levels.back().loops)
            for (int s = 0; s < loop.segments(); ++s) {
                const Vec2 p = loop.midpoint(s);
                // keep the interpolation stencil clear of the mask rim
                if (norm(p - g.center) > g.R - 3 * g.h) continue;
                lsum += loop.seglen[s] * bicubic(g, lap.vals, p);
                wsum += loop.seglen[s];
            }
        if (wsum > 0) g_seed = std::max(0.0, lsum / wsum);
    }

    // g and G by fine cumulative quadrature of the theta interpolant.
    const int nf = 4096;
    const double tlo = ng.theta_spline.x_min(), thi = ng.theta_spline.x_max();
    const double dt = (thi - tlo) / nf;
    std::vector<double> tf(nf + 1), gf(nf + 1), Gf(nf + 1);
    tf[0] = tlo;
    gf[0] = g_seed;
    Gf[0] = 0.0;
    double prev_th = theta_q(tlo);
    for (int i = 1; i <= nf; ++i) {
        tf[i] = tlo + i * dt;
        const double cur_th = theta_q(tf[i]);
        gf[i] = gf[i - 1] + 0.5 * (prev_th + cur_th) * dt;
        Gf[i] = Gf[i - 1] + 0.5 * (gf[i - 1] + gf[i]) * dt;
        prev_th = cur_th;
    }
    ng.g_spline = MonotoneCubic(tf, gf);
    ng.G_spline = MonotoneCubic(std::move(tf), std::move(Gf));

    ng.g.resize(m);
    ng.G.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        ng.g[k] = ng.g_at(ng.t[k]);
        ng.G[k] = ng.G_at(ng.t[k]);
    }
    return ng;
}

std::vector<HRecord> compute_H_rearranged(const RadialRearrangement& rr,
                                          const NonlinearityG& ng) {
    // Fine prefix quadrature of M(r) = 2 pi int g(phi*) s ds and
    // A(r) = 2 pi int G(phi*) s ds on a uniform internal r-grid.
    const int nfine = 4096;
    const double rmax = rr.rho.back();
    const double dr = rmax / nfine;
    std::vector<double> M(nfine + 1, 0.0), A(nfine + 1, 0.0);
    double prev_gm = 0.0, prev_GA = 0.0;  // integrands at the previous node
    for (int i = 1; i <= nfine; ++i) {
        const double r = i * dr;
        const double tv = rr.phi_star(r);
        const double gm = ng.g_at(tv) * r;
        const double GA = ng.G_at(tv) * r;
        M[i] = M[i - 1] + pi * (prev_gm + gm) * dr;      // 2 pi * trapezoid
        A[i] = A[i - 1] + pi * (prev_GA + GA) * dr;
        prev_gm = gm;
        prev_GA = GA;
    }
    auto sample = [&](const std::vector<double>& v, double r) {
        const double u = std::min(double(nfine) - 1e-9, std::max(0.0, r / dr));
        const int i = int(u);
        const double s = u - i;
        return (1 - s) * v[i] + s * v[i + 1];
    };

    std::vector<HRecord> out(rr.rho.size());
    for (std::size_t k = 0; k < rr.rho.size(); ++k) {
        const double r = rr.rho[k];
        HRecord rec;
        rec.M = sample(M, r);
        rec.A = sample(A, r);
        // 2 pi r^3 (A/r^2)' = 2 pi r A' - 4 pi A with A' = 2 pi r G(phi*).
        rec.H = 0.5 * rec.M * rec.M + 4 * pi * pi * r * r * ng.G_at(rr.t[k]) - 4 * pi * rec.A;
        out[k] = rec;
    }
    return out;
}

double compute_H_surface(const ScalarField& phi, const LevelSet& ls, Vec2 xc) {
    const GridGeometry& g = *phi.geom;
    auto [gx, gy] = gradient4(phi);
    double I1 = 0, I2 = 0;
    for (const Loop& loop : ls.loops)
        for (int s = 0; s < loop.segments(); ++s) {
            const Vec2 p = loop.midpoint(s);
            const double dgx = bicubic(g, gx.vals, p);
            const double dgy = bicubic(g, gy.vals, p);
            const double grad2 = dgx * dgx + dgy * dgy;
            I1 += std::sqrt(grad2) * loop.seglen[s];
            I2 += dot(p - xc, loop.normals[s]) * grad2 * loop.seglen[s];
        }
    return 0.5 * I1 * I1 - pi * I2;
}

PohozaevBalance pohozaev_residual(const ScalarField& phi, const NonlinearityG& ng,
                                  const LevelSet& ls, Vec2 xc) {
    const GridGeometry& g = *phi.geom;
    auto [gx, gy] = gradient4(phi);
    double boundary = 0;
    for (const Loop& loop : ls.loops)
        for (int s = 0; s < loop.segments(); ++s) {
            const Vec2 p = loop.midpoint(s);
            const double dgx = bicubic(g, gx.vals, p);
            const double dgy = bicubic(g, gy.vals, p);
            boundary += 0.5 * dot(p - xc, loop.normals[s]) * (dgx * dgx + dgy * dgy) *
                        loop.seglen[s];
        }
    const double Gt = ng.G_at(ls.t);
    double domain = 0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (g.inside(i, j) && phi.at(i, j) > ls.t)
                domain += ng.G_at(phi.at(i, j)) - Gt;
    domain *= 2.0 * g.h * g.h;
    PohozaevBalance pb;
    pb.residual = std::abs(boundary - domain);
    pb.leading = std::max(std::abs(boundary), std::abs(domain));
    return pb;
}

CurveLengths integral_curve_length(const ScalarField& phi, const RadialRearrangement& rr,
                                   const NonlinearityG& ng, double t) {
    const GridGeometry& g = *phi.geom;
    if (!(t < rr.t0)) throw std::invalid_argument("integral_curve_length: t above the peak");

    CurveLengths cl;

    // Trace x' = -grad phi / |grad phi| by RK2 from just off the peak, where
    // the direction is still well defined.
    auto [gxf, gyf] = gradient4(phi);
    auto grad = [&](Vec2 p) -> Vec2 {
        return {bilinear(g, gxf.vals, p), bilinear(g, gyf.vals, p)};
    };
    const double step = 0.25 * g.h;
    const double r_start = 2.0 * g.h;
    Vec2 p = rr.center + Vec2{r_start, 0.0};
    cl.traced = r_start;
    double prev_val = bilinear(g, phi.vals, p);
    const int max_steps = int(40.0 * g.R / step);
    for (int it = 0;; ++it) {
        if (it >= max_steps)
            throw std::runtime_error("integral_curve_length: trace did not reach the level");
        Vec2 d1 = grad(p);
        const double n1 = norm(d1);
        if (n1 < 1e-14) throw std::runtime_error("integral_curve_length: vanishing gradient");
        Vec2 mid = p - (0.5 * step / n1) * d1;
        Vec2 d2 = grad(mid);
        const double n2 = norm(d2);
        if (n2 < 1e-14) throw std::runtime_error("integral_curve_length: vanishing gradient");
        Vec2 q = p - (step / n2) * d2;
        if (norm(q - g.center) > g.R - g.h)
            throw std::runtime_error("integral_curve_length: trace left the domain");
        const double val = bilinear(g, phi.vals, q);
        if (val <= t) {
            const double frac = (prev_val - t) / (prev_val - val);
            cl.traced += frac * step;
            break;
        }
        cl.traced += step;
        p = q;
        prev_val = val;
    }

    // Theta form with sigma = sqrt(t0 - xi); the integrable peak singularity
    // (1 - Theta ~ t0 - xi) becomes a bounded integrand.
    const int nq = 4000;
    const double smax = std::sqrt(rr.t0 - t);
    const double ds = smax / nq;
    double L = 0;
    for (int i = 0; i < nq; ++i) {
        const double s = (i + 0.5) * ds;
        const double one_minus = 1.0 - ng.theta_at(rr.t0 - s * s);
        if (one_minus <= 0) {
            cl.theta_valid = false;
            return cl;
        }
        L += 2.0 * s / std::sqrt(one_minus) * ds;
    }
    cl.theta_form = L;
    return cl;
}

}  // namespace glv

#pragma once
// Small numerical helpers shared across modules: 1-D interpolation,
// quadrature and a tridiagonal solve.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace glv {

// Solve a tridiagonal system in place.  sub[0] and sup[n-1] are unused.
inline void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                              std::vector<double>& sup, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

// Composite trapezoid on a (possibly nonuniform) grid.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

/// Cubic Hermite interpolant on a uniform grid with Catmull-Rom slopes
/// (one-sided at the ends).
class UniformCubic {
public:
    UniformCubic() = default;
    UniformCubic(double x0, double h, std::vector<double> y)
        : x0_(x0), h_(h), y_(std::move(y)) {
        if (y_.size() < 2 || h_ <= 0) throw std::invalid_argument("UniformCubic: bad grid");
    }

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + h_ * double(y_.size() - 1); }

    double operator()(double x) const {
        const std::ptrdiff_t n = std::ptrdiff_t(y_.size());
        double u = (x - x0_) / h_;
        std::ptrdiff_t i = std::ptrdiff_t(std::floor(u));
        if (i < 0) i = 0;
        if (i > n - 2) i = n - 2;
        const double s = u - double(i);
        const double y1 = y_[i], y2 = y_[i + 1];
        const double m1 = slope(i), m2 = slope(i + 1);
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y1 + (s3 - 2 * s2 + s) * m1 +
               (-2 * s3 + 3 * s2) * y2 + (s3 - s2) * m2;
    }

    double derivative(double x) const {
        const std::ptrdiff_t n = std::ptrdiff_t(y_.size());
        double u = (x - x0_) / h_;
        std::ptrdiff_t i = std::ptrdiff_t(std::floor(u));
        if (i < 0) i = 0;
        if (i > n - 2) i = n - 2;
        const double s = u - double(i);
        const double y1 = y_[i], y2 = y_[i + 1];
        const double m1 = slope(i), m2 = slope(i + 1);
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * y1 + (3 * s2 - 4 * s + 1) * m1 +
                (-6 * s2 + 6 * s) * y2 + (3 * s2 - 2 * s) * m2) / h_;
    }

private:
    // Slope scaled by h (Hermite form on the unit interval).
    double slope(std::ptrdiff_t i) const {
        const std::ptrdiff_t n = std::ptrdiff_t(y_.size());
        if (i == 0) return y_[1] - y_[0];
        if (i == n - 1) return y_[n - 1] - y_[n - 2];
        return 0.5 * (y_[i + 1] - y_[i - 1]);
    }

    double x0_ = 0, h_ = 1;
    std::vector<double> y_;
};

/// Monotone piecewise-cubic interpolant (Fritsch-Carlson) on an arbitrary
/// strictly increasing grid.  Preserves monotonicity of the data.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: bad data");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("MonotoneCubic: x not increasing");
        m_.resize(n);
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0) { m_[i] = 0; continue; }
            const double w1 = 2 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2 * (x_[i] - x_[i - 1]);
            m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
        // Clamp end slopes to keep monotonicity.
        for (std::size_t i : {std::size_t(0), n - 1}) {
            const double dd = (i == 0) ? d[0] : d[n - 2];
            if (m_[i] * dd <= 0) m_[i] = 0;
            else if (std::abs(m_[i]) > 3 * std::abs(dd)) m_[i] = 3 * dd;
        }
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double s = (x - x_[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * m_[i] +
               (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * m_[i + 1];
    }

    double derivative(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double s = (x - x_[i]) / h;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * y_[i] / h + (3 * s2 - 4 * s + 1) * m_[i] +
                (-6 * s2 + 6 * s) * y_[i + 1] / h + (3 * s2 - 2 * s) * m_[i + 1]);
    }

private:
    std::size_t locate(double x) const {
        std::size_t lo = 0, hi = x_.size() - 1;
        if (x <= x_[0]) return 0;
        if (x >= x_[hi]) return hi - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace glv

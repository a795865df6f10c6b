#pragma once
// Disk-embedded Cartesian grids and the scalar / complex field value types.

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace glv {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

enum class NodeClass : unsigned char { exterior = 0, boundary = 1, interior = 2 };

/// Uniform n x n Cartesian grid covering the disk |x - center| <= R.
/// Nodes inside the disk are classified interior; inside nodes with an
/// outside 4-neighbor (necessarily within h of the circle) are boundary.
struct GridGeometry {
    int n = 0;
    double h = 0.0;
    Vec2 center{0.0, 0.0};
    double R = 0.0;
    std::vector<NodeClass> mask;

    static std::shared_ptr<const GridGeometry> disk(double R, int n, Vec2 center = {0, 0});

    int idx(int i, int j) const { return j * n + i; }
    double x(int i) const { return center[0] + (i - 0.5 * (n - 1)) * h; }
    double y(int j) const { return center[1] + (j - 0.5 * (n - 1)) * h; }
    Vec2 node(int i, int j) const { return {x(i), y(j)}; }

    NodeClass at(int i, int j) const {
        if (i < 0 || j < 0 || i >= n || j >= n) return NodeClass::exterior;
        return mask[idx(i, j)];
    }
    bool inside(int i, int j) const { return at(i, j) != NodeClass::exterior; }

    bool same_grid(const GridGeometry& o) const {
        return n == o.n && h == o.h && R == o.R && center == o.center;
    }
};

using GeometryPtr = std::shared_ptr<const GridGeometry>;

struct ScalarField {
    GeometryPtr geom;
    std::vector<double> vals;

    ScalarField() = default;
    explicit ScalarField(GeometryPtr g, double fill = 0.0)
        : geom(std::move(g)), vals(std::size_t(geom->n) * geom->n, fill) {}

    double& at(int i, int j) { return vals[geom->idx(i, j)]; }
    double at(int i, int j) const { return vals[geom->idx(i, j)]; }
};

struct Field2D {
    GeometryPtr geom;
    std::vector<double> re, im;
    int bc_degree = 0;

    Field2D() = default;
    explicit Field2D(GeometryPtr g, int d = 0)
        : geom(std::move(g)),
          re(std::size_t(geom->n) * geom->n, 0.0),
          im(std::size_t(geom->n) * geom->n, 0.0),
          bc_degree(d) {}

    double modulus(int i, int j) const {
        const int k = geom->idx(i, j);
        return std::hypot(re[k], im[k]);
    }
};

/// Bilinear interpolation of a node-sampled array at physical point p.
/// `fallback(i, j)` supplies values for exterior corners.
double bilinear(const GridGeometry& g, const std::vector<double>& v, Vec2 p,
                const std::vector<double>* ext = nullptr);

/// Bicubic (Catmull-Rom) interpolation; falls back to bilinear near the mask
/// edge where the 4x4 stencil is incomplete.
double bicubic(const GridGeometry& g, const std::vector<double>& v, Vec2 p);

/// Gradient of a scalar field by centered differences (one-sided where a
/// neighbor is exterior).  Returns the two component fields.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);

/// Fourth-order centered gradient where the 5-point stencil fits in the
/// mask, falling back to the second-order formulas of gradient() elsewhere.
std::pair<ScalarField, ScalarField> gradient4(const ScalarField& f);

}  // namespace glv

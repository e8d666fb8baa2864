#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "apex/errors.hpp"

namespace apex::geom {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    return n > 0.0 ? a / n : Vec2{0.0, 0.0};
}
/// Rotate 90 degrees counterclockwise (left normal of a tangent).
inline Vec2 left_normal(Vec2 t) { return {-t.y, t.x}; }
inline Vec2 rotated(Vec2 p, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Rigid 2D pose. `ego` coordinates are x lateral (positive right of
/// heading), y longitudinal (positive forward).
struct Pose2 {
    double x{0.0};
    double y{0.0};
    double yaw{0.0};

    Vec2 position() const { return {x, y}; }
    Vec2 forward() const { return {std::cos(yaw), std::sin(yaw)}; }
    /// Ego (x lateral-right, y forward) to world.
    Vec2 to_world(Vec2 ego) const {
        Vec2 f = forward();
        Vec2 right{f.y, -f.x};
        return position() + f * ego.y + right * ego.x;
    }
    Vec2 to_ego(Vec2 world) const {
        Vec2 d = world - position();
        Vec2 f = forward();
        Vec2 right{f.y, -f.x};
        return {dot(d, right), dot(d, f)};
    }
};

/// Ordered 2D point chain. For closed polylines the segment from the
/// last point back to the first is implicit.
struct Polyline {
    std::vector<Vec2> points;
    bool closed{false};

    std::size_t size() const { return points.size(); }
    const Vec2& operator[](std::size_t i) const { return points[i]; }
    Vec2& operator[](std::size_t i) { return points[i]; }

    /// Throws DegenerateInput if fewer than 2 points or consecutive
    /// duplicates (spacing <= 1e-9 m).
    void validate() const;
    double length() const;
};

double polyline_length(std::span<const Vec2> pts, bool closed);
/// Cumulative arc lengths; size() entries for open, size()+1 for closed
/// (the last entry is the total length through the closing segment).
std::vector<double> cum_arc_lengths(std::span<const Vec2> pts, bool closed);

struct PolyFit {
    std::vector<double> coefficients;  // lowest degree first
    int order{0};

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
        return acc;
    }
};

/// Least-squares fit y = sum c_k x^k. Throws DegenerateInput when there
/// are fewer than order+1 points or the abscissae are (numerically) all
/// equal.
PolyFit fit_polynomial(std::span<const Vec2> points, int order);

/// Savitzky-Golay smoothing. Near the ends of an open sequence the
/// window shrinks to the available samples and the polynomial is refit
/// (no padding); with wrap=true the window wraps around, for closed
/// loops. Throws InvalidWindow unless window is odd, window > order and
/// values.size() >= window.
std::vector<double> savgol_smooth(std::span<const double> values, int window, int order,
                                  bool wrap = false);

/// Per-point signed curvature (1/m, positive = left turn) from the
/// circumscribed circle of consecutive point triples. Open endpoints
/// copy the nearest interior value; closed polylines wrap. Throws
/// TooFewPoints for fewer than 3 points.
std::vector<double> curvature(const Polyline& line);

/// Signed curvature of the circle through three points.
double circumcircle_curvature(Vec2 a, Vec2 b, Vec2 c);

/// Arc-length-uniform resampling by linear interpolation. Open inputs
/// produce points at multiples of `spacing` from the start; closed
/// inputs keep closure by using the exact divisor closest to `spacing`.
Polyline resample_polyline(const Polyline& line, double spacing);

/// Point on the polyline at arc length s (clamped for open, wrapped for
/// closed inputs).
Vec2 point_at_arc(const Polyline& line, double s);
/// Unit tangent at vertex i (central difference, wrapping when closed).
Vec2 tangent_at(const Polyline& line, std::size_t i);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
/// Distance from p to the nearest segment of the polyline.
double point_polyline_distance(Vec2 p, const Polyline& line);

/// Arc-length coordinate of the point on the polyline closest to p.
struct ArcProjection {
    double s{0.0};         // arc length of the foot point
    double distance{0.0};  // unsigned distance to the polyline
    std::size_t segment{0};
};
ArcProjection project_to_polyline(Vec2 p, const Polyline& line);

/// Even-odd point-in-polygon test (polygon given by its vertex loop).
bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);

/// True if the proper segments (a1,a2) and (b1,b2) intersect.
bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2);
/// True if any two non-adjacent segments of the closed loop intersect.
bool polygon_self_intersects(std::span<const Vec2> loop);

/// Static nearest-neighbour index over a fixed point set.
class KdTree2 {
public:
    KdTree2() = default;
    explicit KdTree2(std::vector<Vec2> points);

    struct Hit {
        std::size_t index{0};
        double distance{0.0};
    };

    /// Exact nearest point. Ties resolve to the lowest index. Throws
    /// EmptyIndex when the tree is empty.
    Hit nearest(Vec2 query) const;

    bool empty() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vec2>& points() const { return points_; }

private:
    struct Node {
        Vec2 point;
        std::size_t index;      // index into the original point set
        int axis;               // 0 = x, 1 = y
        std::int32_t left{-1};
        std::int32_t right{-1};
    };

    std::int32_t build(std::span<std::size_t> ids, int depth);
    void search(std::int32_t node, Vec2 q, Hit& best) const;

    std::vector<Vec2> points_;
    std::vector<Node> nodes_;
    std::int32_t root_{-1};
};

}  // namespace apex::geom

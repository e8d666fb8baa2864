#include "apex/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace apex::geom {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a > M_PI) a -= 2.0 * M_PI;
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

void Polyline::validate() const {
    if (points.size() < 2) throw DegenerateInput("polyline needs at least 2 points");
    std::size_t n = points.size();
    std::size_t segments = closed ? n : n - 1;
    for (std::size_t i = 0; i < segments; ++i) {
        if (dist(points[i], points[(i + 1) % n]) <= 1e-9)
            throw DegenerateInput("polyline has coincident consecutive points");
    }
}

double Polyline::length() const { return polyline_length(points, closed); }

double polyline_length(std::span<const Vec2> pts, bool closed) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += dist(pts[i], pts[i + 1]);
    if (closed && pts.size() > 1) len += dist(pts.back(), pts.front());
    return len;
}

std::vector<double> cum_arc_lengths(std::span<const Vec2> pts, bool closed) {
    std::vector<double> s;
    s.reserve(pts.size() + (closed ? 1 : 0));
    s.push_back(0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s.push_back(s.back() + dist(pts[i], pts[i + 1]));
    if (closed && pts.size() > 1) s.push_back(s.back() + dist(pts.back(), pts.front()));
    return s;
}

PolyFit fit_polynomial(std::span<const Vec2> points, int order) {
    if (order < 0) throw DegenerateInput("negative polynomial order");
    std::size_t n = points.size();
    std::size_t cols = static_cast<std::size_t>(order) + 1;
    if (n < cols) throw DegenerateInput("too few points for polynomial order");

    double xmin = points[0].x, xmax = points[0].x;
    for (auto& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    if (xmax - xmin < 1e-12) throw DegenerateInput("abscissae all equal");

    Eigen::MatrixXd vand(n, cols);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 1.0;
        for (std::size_t k = 0; k < cols; ++k) {
            vand(i, k) = acc;
            acc *= points[i].x;
        }
        rhs(i) = points[i].y;
    }
    Eigen::VectorXd c = vand.colPivHouseholderQr().solve(rhs);

    PolyFit fit;
    fit.order = order;
    fit.coefficients.assign(c.data(), c.data() + cols);
    return fit;
}

namespace {

// Least-squares polynomial value at offset 0 for samples at integer
// offsets `offs`. Returns the weight vector applied to the samples.
std::vector<double> savgol_weights(std::span<const int> offs, int order) {
    int n = static_cast<int>(offs.size());
    int cols = std::min(order, n - 1) + 1;
    Eigen::MatrixXd vand(n, cols);
    for (int i = 0; i < n; ++i) {
        double acc = 1.0;
        for (int k = 0; k < cols; ++k) {
            vand(i, k) = acc;
            acc *= static_cast<double>(offs[i]);
        }
    }
    // row of the hat matrix for evaluation at offset 0:
    // w = e0^T (X^T X)^-1 X^T
    Eigen::MatrixXd xtx = vand.transpose() * vand;
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(cols);
    e0(0) = 1.0;
    Eigen::VectorXd tmp = xtx.ldlt().solve(e0);
    Eigen::VectorXd w = vand * tmp;
    return {w.data(), w.data() + n};
}

}  // namespace

std::vector<double> savgol_smooth(std::span<const double> values, int window, int order,
                                  bool wrap) {
    int n = static_cast<int>(values.size());
    if (window <= 0 || window % 2 == 0) throw InvalidWindow("window must be odd and positive");
    if (window <= order) throw InvalidWindow("window must exceed polynomial order");
    if (n < window) throw InvalidWindow("sequence shorter than window");

    int half = window / 2;
    std::vector<double> out(values.size());

    // interior weights are shared by every full centered window
    std::vector<int> center_offs(window);
    std::iota(center_offs.begin(), center_offs.end(), -half);
    std::vector<double> center_w = savgol_weights(center_offs, order);

    for (int i = 0; i < n; ++i) {
        if (wrap) {
            double acc = 0.0;
            for (int j = 0; j < window; ++j) {
                int idx = ((i - half + j) % n + n) % n;
                acc += center_w[j] * values[idx];
            }
            out[i] = acc;
        } else if (i >= half && i + half < n) {
            double acc = 0.0;
            for (int j = 0; j < window; ++j) acc += center_w[j] * values[i - half + j];
            out[i] = acc;
        } else {
            int lo = std::max(0, i - half);
            int hi = std::min(n - 1, i + half);
            std::vector<int> offs;
            offs.reserve(hi - lo + 1);
            for (int j = lo; j <= hi; ++j) offs.push_back(j - i);
            std::vector<double> w = savgol_weights(offs, order);
            double acc = 0.0;
            for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * values[lo + static_cast<int>(j)];
            out[i] = acc;
        }
    }
    return out;
}

double circumcircle_curvature(Vec2 a, Vec2 b, Vec2 c) {
    double twice_area = cross(b - a, c - a);
    double d1 = dist(a, b), d2 = dist(b, c), d3 = dist(a, c);
    double denom = d1 * d2 * d3;
    if (denom < 1e-18) return 0.0;
    return 2.0 * twice_area / denom;
}

std::vector<double> curvature(const Polyline& line) {
    std::size_t n = line.size();
    if (n < 3) throw TooFewPoints("curvature needs at least 3 points");
    std::vector<double> k(n, 0.0);
    if (line.closed) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& prev = line[(i + n - 1) % n];
            const Vec2& next = line[(i + 1) % n];
            k[i] = circumcircle_curvature(prev, line[i], next);
        }
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i)
            k[i] = circumcircle_curvature(line[i - 1], line[i], line[i + 1]);
        k[0] = k[1];
        k[n - 1] = k[n - 2];
    }
    return k;
}

namespace {

Vec2 interp_at_arc(std::span<const Vec2> pts, bool closed, std::span<const double> cum, double s) {
    std::size_t n = pts.size();
    double total = cum.back();
    if (closed) {
        s = std::fmod(s, total);
        if (s < 0.0) s += total;
    } else {
        s = std::clamp(s, 0.0, total);
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t seg = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cum.begin() - 1));
    std::size_t last_seg = closed ? n - 1 : n - 2;
    seg = std::min(seg, last_seg);
    double seg_len = cum[seg + 1] - cum[seg];
    double t = seg_len > 0.0 ? (s - cum[seg]) / seg_len : 0.0;
    Vec2 a = pts[seg];
    Vec2 b = pts[(seg + 1) % n];
    return a + (b - a) * t;
}

}  // namespace

Polyline resample_polyline(const Polyline& line, double spacing) {
    if (!(spacing > 0.0)) throw InvalidSpacing("spacing must be positive");
    line.validate();
    std::vector<double> cum = cum_arc_lengths(line.points, line.closed);
    double total = cum.back();

    Polyline out;
    out.closed = line.closed;
    if (line.closed) {
        std::size_t m = std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(total / spacing)));
        double step = total / static_cast<double>(m);
        out.points.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            out.points.push_back(interp_at_arc(line.points, true, cum, step * static_cast<double>(i)));
    } else {
        std::size_t m = static_cast<std::size_t>(std::floor(total / spacing + 1e-9));
        out.points.reserve(m + 1);
        for (std::size_t i = 0; i <= m; ++i)
            out.points.push_back(interp_at_arc(line.points, false, cum, spacing * static_cast<double>(i)));
    }
    return out;
}

Vec2 point_at_arc(const Polyline& line, double s) {
    std::vector<double> cum = cum_arc_lengths(line.points, line.closed);
    return interp_at_arc(line.points, line.closed, cum, s);
}

Vec2 tangent_at(const Polyline& line, std::size_t i) {
    std::size_t n = line.size();
    Vec2 d;
    if (line.closed) {
        d = line[(i + 1) % n] - line[(i + n - 1) % n];
    } else if (i == 0) {
        d = line[1] - line[0];
    } else if (i + 1 >= n) {
        d = line[n - 1] - line[n - 2];
    } else {
        d = line[i + 1] - line[i - 1];
    }
    return normalized(d);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    if (len2 <= 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

double point_polyline_distance(Vec2 p, const Polyline& line) {
    std::size_t n = line.size();
    std::size_t segs = line.closed ? n : n - 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_distance(p, line[i], line[(i + 1) % n]));
    return best;
}

ArcProjection project_to_polyline(Vec2 p, const Polyline& line) {
    std::size_t n = line.size();
    std::size_t segs = line.closed ? n : n - 1;
    std::vector<double> cum = cum_arc_lengths(line.points, line.closed);

    ArcProjection best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segs; ++i) {
        Vec2 a = line[i];
        Vec2 b = line[(i + 1) % n];
        Vec2 ab = b - a;
        double len2 = norm2(ab);
        double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        double d = dist(p, a + ab * t);
        if (d < best.distance) {
            best.distance = d;
            best.segment = i;
            best.s = cum[i] + t * std::sqrt(len2);
        }
    }
    return best;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon) {
    bool inside = false;
    std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    double o1 = orient(a1, a2, b1);
    double o2 = orient(a1, a2, b2);
    double o3 = orient(b1, b2, a1);
    double o4 = orient(b1, b2, a2);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return true;
    return false;  // touching endpoints / collinear overlap not counted
}

bool polygon_self_intersects(std::span<const Vec2> loop) {
    std::size_t n = loop.size();
    if (n < 4) return false;

    // coarse uniform grid so only nearby segment pairs are tested
    double cell = 0.0;
    for (std::size_t i = 0; i < n; ++i) cell = std::max(cell, dist(loop[i], loop[(i + 1) % n]));
    cell = std::max(cell, 1e-6) * 2.0;

    auto key = [cell](Vec2 p) {
        auto cx = static_cast<std::int64_t>(std::floor(p.x / cell));
        auto cy = static_cast<std::int64_t>(std::floor(p.y / cell));
        return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
    };

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    grid.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 mid = (loop[i] + loop[(i + 1) % n]) * 0.5;
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                grid[key(mid + Vec2{dx * cell, dy * cell})].push_back(i);
    }

    for (std::size_t i = 0; i < n; ++i) {
        Vec2 mid = (loop[i] + loop[(i + 1) % n]) * 0.5;
        auto it = grid.find(key(mid));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
            if (j <= i + 1) continue;
            if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
            if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]))
                return true;
        }
    }
    return false;
}

KdTree2::KdTree2(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    std::vector<std::size_t> ids(points_.size());
    std::iota(ids.begin(), ids.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(ids, 0);
}

std::int32_t KdTree2::build(std::span<std::size_t> ids, int depth) {
    if (ids.empty()) return -1;

    double xmin = points_[ids[0]].x, xmax = xmin, ymin = points_[ids[0]].y, ymax = ymin;
    for (std::size_t id : ids) {
        xmin = std::min(xmin, points_[id].x);
        xmax = std::max(xmax, points_[id].x);
        ymin = std::min(ymin, points_[id].y);
        ymax = std::max(ymax, points_[id].y);
    }
    int axis = (xmax - xmin) >= (ymax - ymin) ? 0 : 1;

    std::size_t mid = ids.size() / 2;
    std::nth_element(ids.begin(), ids.begin() + mid, ids.end(), [&](std::size_t a, std::size_t b) {
        double va = axis == 0 ? points_[a].x : points_[a].y;
        double vb = axis == 0 ? points_[b].x : points_[b].y;
        if (va != vb) return va < vb;
        return a < b;
    });

    auto self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{points_[ids[mid]], ids[mid], axis, -1, -1});
    std::int32_t left = build(ids.subspan(0, mid), depth + 1);
    std::int32_t right = build(ids.subspan(mid + 1), depth + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void KdTree2::search(std::int32_t node, Vec2 q, Hit& best) const {
    if (node < 0) return;
    const Node& nd = nodes_[node];

    double d2 = norm2(q - nd.point);
    double best2 = best.distance * best.distance;
    if (d2 < best2 || (d2 == best2 && nd.index < best.index)) {
        best.index = nd.index;
        best.distance = std::sqrt(d2);
    }

    double delta = nd.axis == 0 ? q.x - nd.point.x : q.y - nd.point.y;
    std::int32_t near = delta < 0.0 ? nd.left : nd.right;
    std::int32_t far = delta < 0.0 ? nd.right : nd.left;
    search(near, q, best);
    if (std::abs(delta) <= best.distance) search(far, q, best);
}

KdTree2::Hit KdTree2::nearest(Vec2 query) const {
    if (points_.empty()) throw EmptyIndex("nearest-neighbour query on empty index");
    Hit best;
    best.index = points_.size();  // sentinel loses every tie
    best.distance = std::numeric_limits<double>::infinity();
    search(root_, query, best);
    return best;
}

}  // namespace apex::geom

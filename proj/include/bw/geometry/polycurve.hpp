#pragma once

// Closed polygonal curves and the distance queries the embedding checks need.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "bw/error.hpp"

namespace bw::geometry {

using Vec3 = Eigen::Vector3d;

inline constexpr std::size_t kMinCurveVertices = 8;

/// Closed polygon; the last vertex connects back to the first.
class PolyCurve {
public:
    PolyCurve() = default;
    explicit PolyCurve(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.size() < kMinCurveVertices) {
            throw precondition_error("PolyCurve: need at least " + std::to_string(kMinCurveVertices) + " vertices, got " + std::to_string(vertices_.size()));
        }
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if ((vertices_[i] - vertices_[(i + 1) % vertices_.size()]).norm() == 0.0) {
                throw precondition_error("PolyCurve: consecutive vertices " + std::to_string(i) + " coincide");
            }
        }
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const Vec3& operator[](std::size_t i) const { return vertices_[i]; }
    const Vec3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }

    Vec3 segment_start(std::size_t i) const { return vertices_[i]; }
    Vec3 segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

    double length() const {
        double l = 0.0;
        for (std::size_t i = 0; i < size(); ++i) l += (segment_end(i) - segment_start(i)).norm();
        return l;
    }

    /// Cumulative arc length at each vertex (size n + 1, last entry is the total length).
    std::vector<double> arc_lengths() const {
        std::vector<double> s(size() + 1, 0.0);
        for (std::size_t i = 0; i < size(); ++i) s[i + 1] = s[i] + (segment_end(i) - segment_start(i)).norm();
        return s;
    }

    /// Same polygon with every segment split at its midpoint.
    PolyCurve refined() const {
        std::vector<Vec3> v;
        v.reserve(2 * size());
        for (std::size_t i = 0; i < size(); ++i) {
            v.push_back(segment_start(i));
            v.push_back(0.5 * (segment_start(i) + segment_end(i)));
        }
        return PolyCurve(std::move(v));
    }

    template <class Transform>
    PolyCurve transformed(const Transform& f) const {
        std::vector<Vec3> v;
        v.reserve(size());
        for (const auto& p : vertices_) v.push_back(f(p));
        return PolyCurve(std::move(v));
    }

private:
    std::vector<Vec3> vertices_;
};

inline double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

/// Distance between segments [p1, q1] and [p2, q2] (closest-point clamping).
inline double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    constexpr double eps = 1e-300;
    double s = 0.0, t = 0.0;
    if (a <= eps && e <= eps) return r.norm();
    if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

/// Uniform hash grid over the segments of one curve, for range queries.
class SegmentGrid {
public:
    SegmentGrid(const PolyCurve& curve, double cell) : curve_(&curve), cell_(cell) {
        if (!(cell > 0.0)) throw precondition_error("SegmentGrid: cell size must be positive");
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const Vec3 lo = curve.segment_start(i).cwiseMin(curve.segment_end(i));
            const Vec3 hi = curve.segment_start(i).cwiseMax(curve.segment_end(i));
            for_cells(lo, hi, [&](std::uint64_t key) { cells_[key].push_back(static_cast<std::uint32_t>(i)); });
        }
    }

    /// Calls f(segment) for each segment whose box may lie within `radius` of the box [lo, hi].
    /// A segment can be reported more than once.
    template <class F>
    void query(const Vec3& lo, const Vec3& hi, double radius, F&& f) const {
        const Vec3 pad = Vec3::Constant(radius);
        for_cells(lo - pad, hi + pad, [&](std::uint64_t key) {
            auto it = cells_.find(key);
            if (it == cells_.end()) return;
            for (auto s : it->second) f(static_cast<std::size_t>(s));
        });
    }

private:
    template <class F>
    void for_cells(const Vec3& lo, const Vec3& hi, F&& f) const {
        const Eigen::Vector3i a = (lo / cell_).array().floor().cast<int>();
        const Eigen::Vector3i b = (hi / cell_).array().floor().cast<int>();
        for (int x = a.x(); x <= b.x(); ++x) {
            for (int y = a.y(); y <= b.y(); ++y) {
                for (int z = a.z(); z <= b.z(); ++z) f(key(x, y, z));
            }
        }
    }
    static std::uint64_t key(int x, int y, int z) {
        auto u = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v) & 0x1FFFFF); };
        return (u(x) << 42) | (u(y) << 21) | u(z);
    }

    const PolyCurve* curve_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

inline double mean_segment_length(const PolyCurve& c) { return c.length() / static_cast<double>(c.size()); }

/// Minimum distance between two curves, or `cap` if every pair is at least `cap` apart.
inline double min_distance(const PolyCurve& a, const PolyCurve& b, double cap = std::numeric_limits<double>::infinity()) {
    double best = cap;
    if (std::isinf(cap)) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                best = std::min(best, segment_distance(a.segment_start(i), a.segment_end(i), b.segment_start(j), b.segment_end(j)));
            }
        }
        return best;
    }
    const SegmentGrid grid(b, std::max(cap, mean_segment_length(b)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 p = a.segment_start(i), q = a.segment_end(i);
        grid.query(p.cwiseMin(q), p.cwiseMax(q), cap, [&](std::size_t j) {
            best = std::min(best, segment_distance(p, q, b.segment_start(j), b.segment_end(j)));
        });
    }
    return best;
}

/// Minimum distance between segments of one curve that are at least `arc_gap` apart along it,
/// or `cap` if none come closer than that.
inline double min_self_distance(const PolyCurve& c, double arc_gap, double cap) {
    const auto s = c.arc_lengths();
    const double total = s.back();
    const SegmentGrid grid(c, std::max(cap, mean_segment_length(c)));
    double best = cap;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec3 p = c.segment_start(i), q = c.segment_end(i);
        grid.query(p.cwiseMin(q), p.cwiseMax(q), cap, [&](std::size_t j) {
            if (j <= i) return;
            // arc distance between the closest ends of the two segments
            double gap = s[j] - s[i + 1];
            gap = std::min(gap, total - (s[j + 1] - s[i]));
            if (gap < arc_gap) return;
            best = std::min(best, segment_distance(p, q, c.segment_start(j), c.segment_end(j)));
        });
    }
    return best;
}

/// Smallest circumradius of vertex triples (i - k, i, i + k), with k chosen so the triple
/// spans about `span` of arc on each side; span 0 uses consecutive vertices.
/// Infinite for a straight run.
inline double min_turning_radius(const PolyCurve& c, double span = 0.0) {
    const std::size_t n = c.size();
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(span / mean_segment_length(c))), 1, (n - 1) / 2);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = c.vertex(i + n - k);
        const Vec3& b = c.vertex(i);
        const Vec3& d = c.vertex(i + k);
        const double cross = (b - a).cross(d - a).norm();
        if (cross <= 0.0) continue;
        best = std::min(best, (b - a).norm() * (d - b).norm() * (d - a).norm() / (2.0 * cross));
    }
    return best;
}

}  // namespace bw::geometry

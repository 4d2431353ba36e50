#pragma once

// Solid tori as tubes around closed polygonal cores.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "bw/geometry/polycurve.hpp"

namespace bw::geometry {

/// Orthonormal pair spanning the normal plane at a core vertex.
struct Frame {
    Vec3 n1;
    Vec3 n2;
};

/// Central-difference unit tangents at the vertices.
inline std::vector<Vec3> vertex_tangents(const PolyCurve& c) {
    std::vector<Vec3> t(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) t[i] = (c.vertex(i + 1) - c.vertex(i + c.size() - 1)).normalized();
    return t;
}

inline Vec3 any_perpendicular(const Vec3& t) {
    const Vec3 axis = std::abs(t.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    return (axis - axis.dot(t) * t).normalized();
}

/// Rotation-minimizing frames by double reflection, with the closing holonomy angle spread
/// evenly over arc length so the frame field is continuous around the loop.
inline std::vector<Frame> rotation_minimizing_frames(const PolyCurve& c) {
    const std::size_t n = c.size();
    const auto t = vertex_tangents(c);
    auto transport = [&](const Vec3& r, std::size_t i, std::size_t j) -> Vec3 {
        const Vec3 v1 = c.vertex(j) - c.vertex(i);
        const double c1 = v1.squaredNorm();
        const Vec3 rl = r - (2.0 / c1) * v1.dot(r) * v1;
        const Vec3 tl = t[i] - (2.0 / c1) * v1.dot(t[i]) * v1;
        const Vec3 v2 = t[j] - tl;
        const double c2 = v2.squaredNorm();
        Vec3 out = c2 > 1e-30 ? Vec3(rl - (2.0 / c2) * v2.dot(rl) * v2) : rl;
        out -= out.dot(t[j]) * t[j];
        return out.normalized();
    };

    std::vector<Vec3> r(n);
    r[0] = any_perpendicular(t[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) r[i + 1] = transport(r[i], i, i + 1);
    const Vec3 back = transport(r[n - 1], n - 1, 0);
    const double holonomy = std::atan2(r[0].cross(back).dot(t[0]), r[0].dot(back));

    const auto s = c.arc_lengths();
    std::vector<Frame> frames(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = -holonomy * s[i] / s.back();
        const Vec3 b = t[i].cross(r[i]);
        const Vec3 n1 = std::cos(angle) * r[i] + std::sin(angle) * b;
        frames[i] = {n1, t[i].cross(n1)};
    }
    return frames;
}

/// Position in a tube given in units of its radius: s runs along the core
/// (period = core length / radius), (a, b) lies in the unit normal disk.
struct LocalPoint {
    double s;
    double a;
    double b;
};

/// A solid torus: core polygon, tube radius and normal frames at the core vertices.
class TubeEmbedding {
public:
    TubeEmbedding() = default;
    TubeEmbedding(PolyCurve core, double radius, std::vector<Frame> frames)
        : core_(std::move(core)), radius_(radius), frames_(std::move(frames)), arc_(core_.arc_lengths()) {
        if (!(radius > 0.0)) throw precondition_error("TubeEmbedding: radius must be positive");
        if (frames_.size() != core_.size()) throw precondition_error("TubeEmbedding: one frame per core vertex");
    }
    TubeEmbedding(PolyCurve core, double radius) : TubeEmbedding(core, radius, rotation_minimizing_frames(core)) {}

    const PolyCurve& core() const noexcept { return core_; }
    double radius() const noexcept { return radius_; }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    double core_length() const noexcept { return arc_.back(); }
    /// Core length measured in tube radii.
    double local_period() const noexcept { return core_length() / radius_; }

    /// Ambient point for local tube coordinates; positions and frames are interpolated
    /// linearly between core vertices.
    Vec3 map(const LocalPoint& p) const {
        const double total = core_length();
        double sigma = std::fmod(p.s * radius_, total);
        if (sigma < 0.0) sigma += total;
        std::size_t j = static_cast<std::size_t>(std::upper_bound(arc_.begin(), arc_.end(), sigma) - arc_.begin());
        j = std::clamp<std::size_t>(j, 1, core_.size()) - 1;
        const double len = arc_[j + 1] - arc_[j];
        const double u = len > 0.0 ? (sigma - arc_[j]) / len : 0.0;
        const Vec3 base = (1.0 - u) * core_.segment_start(j) + u * core_.segment_end(j);
        const Frame& f0 = frames_[j];
        const Frame& f1 = frames_[(j + 1) % core_.size()];
        const Vec3 n1 = ((1.0 - u) * f0.n1 + u * f1.n1).normalized();
        Vec3 n2 = (1.0 - u) * f0.n2 + u * f1.n2;
        n2 = (n2 - n2.dot(n1) * n1).normalized();
        return base + radius_ * (p.a * n1 + p.b * n2);
    }

    /// Boundary circle of the normal disk at a core vertex.
    PolyCurve meridian(std::size_t station, std::size_t samples, double scale = 1.0) const {
        const Frame& f = frames_.at(station);
        std::vector<Vec3> v;
        for (std::size_t k = 0; k < samples; ++k) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
            v.push_back(core_[station] + scale * radius_ * (std::cos(phi) * f.n1 + std::sin(phi) * f.n2));
        }
        return PolyCurve(std::move(v));
    }

    /// Number of segments of `curve` passing through the normal disk at a core vertex.
    std::size_t disk_crossings(std::size_t station, const PolyCurve& curve) const {
        const Vec3 centre = core_[station];
        const Vec3 normal = frames_.at(station).n1.cross(frames_[station].n2);
        std::size_t count = 0;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double d0 = (curve.segment_start(i) - centre).dot(normal);
            const double d1 = (curve.segment_end(i) - centre).dot(normal);
            if ((d0 < 0.0) == (d1 < 0.0)) continue;
            const Vec3 hit = curve.segment_start(i) + (d0 / (d0 - d1)) * (curve.segment_end(i) - curve.segment_start(i));
            if ((hit - centre).norm() < radius_) ++count;
        }
        return count;
    }

private:
    PolyCurve core_;
    double radius_ = 0.0;
    std::vector<Frame> frames_;
    std::vector<double> arc_;
};

/// Round core circle of radius `major` in the xy-plane, first vertex on the positive x axis.
inline PolyCurve round_circle(double major, std::size_t samples) {
    std::vector<Vec3> v;
    for (std::size_t k = 0; k < samples; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        v.emplace_back(major * std::cos(th), major * std::sin(th), 0.0);
    }
    return PolyCurve(std::move(v));
}

}  // namespace bw::geometry

#pragma once

// Linking numbers of disjoint closed polygons.

#include <cmath>
#include <numbers>
#include <string>

#include "bw/geometry/polycurve.hpp"

namespace bw::geometry {

/// Gauss double integral, midpoint rule on every pair of segments.
inline double gauss_linking_sum(const PolyCurve& a, const PolyCurve& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 da = a.segment_end(i) - a.segment_start(i);
        const Vec3 ma = 0.5 * (a.segment_end(i) + a.segment_start(i));
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec3 db = b.segment_end(j) - b.segment_start(j);
            const Vec3 r = ma - 0.5 * (b.segment_end(j) + b.segment_start(j));
            const double d = r.norm();
            total += da.cross(db).dot(r) / (d * d * d);
        }
    }
    return total / (4.0 * std::numbers::pi);
}

/// Same quantity computed exactly for polygons: the signed solid angle each segment pair subtends.
inline double exact_linking_sum(const PolyCurve& a, const PolyCurve& b) {
    auto unit_cross = [](const Vec3& u, const Vec3& v) -> Vec3 {
        const Vec3 c = u.cross(v);
        const double n = c.norm();
        return n > 0.0 ? Vec3(c / n) : Vec3::Zero();
    };
    auto safe_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 p1 = a.segment_start(i), p2 = a.segment_end(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec3 p3 = b.segment_start(j), p4 = b.segment_end(j);
            const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
            const Vec3 n1 = unit_cross(r13, r14), n2 = unit_cross(r14, r24);
            const Vec3 n3 = unit_cross(r24, r23), n4 = unit_cross(r23, r13);
            const double omega = safe_asin(n1.dot(n2)) + safe_asin(n2.dot(n3)) + safe_asin(n3.dot(n4)) + safe_asin(n4.dot(n1));
            const double orient = (p4 - p3).cross(p2 - p1).dot(r13);
            if (orient > 0.0) {
                total += omega;
            } else if (orient < 0.0) {
                total -= omega;
            }
        }
    }
    return total / (4.0 * std::numbers::pi);
}

struct LinkingOptions {
    double min_separation = 1e-9;
    double max_residual = 0.25;
    int max_refinements = 3;
};

struct LinkingResult {
    int value = 0;
    double raw = 0.0;
    int refinements = 0;
};

/// Rounded Gauss sum; both curves are refined by midpoint insertion while the sum sits
/// too far from an integer.
inline LinkingResult linking_number_detailed(const PolyCurve& a, const PolyCurve& b, const LinkingOptions& opt = {}) {
    const double sep = min_distance(a, b);
    if (!(sep > opt.min_separation)) {
        throw precondition_error("linking_number: curves are closer than " + std::to_string(opt.min_separation));
    }
    PolyCurve x = a, y = b;
    for (int round = 0;; ++round) {
        const double raw = gauss_linking_sum(x, y);
        const double nearest = std::round(raw);
        if (std::abs(raw - nearest) < opt.max_residual) return {static_cast<int>(nearest), raw, round};
        if (round == opt.max_refinements) {
            throw degeneracy_error(0, "linking sum " + std::to_string(raw) + " did not settle near an integer");
        }
        x = x.refined();
        y = y.refined();
    }
}

inline int linking_number(const PolyCurve& a, const PolyCurve& b, const LinkingOptions& opt = {}) {
    return linking_number_detailed(a, b, opt).value;
}

}  // namespace bw::geometry

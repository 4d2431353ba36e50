#pragma once

// Reference Bing pair and Whitehead curve, written in the local coordinates of the
// tube that contains them.
//
// Every curve is a "stadium": two parallel strands at v = -w and v = +w joined by
// semicircular hairpins, sampled by arc length in the (s, v) plane and placed in the
// normal disk along the direction (cos psi, sin psi). A hairpin lying in the plane b = 0
// and one lying in the plane a = 0 whose centres are 2e apart along s interlock: each
// hairpin tip passes through the other's opening. That is a clasp.
//
//   Bing pair: component A lies in b = 0 and spans the stretch between the two clasp
//   stations; component B lies in a = 0 and covers the rest of the longitude. They
//   clasp at both stations, with opposite signs, so lk(A, B) = 0.
//
//   Whitehead: one long stadium running once around the longitude whose strand plane
//   turns a quarter turn along the way, so its two hairpins clasp each other.
//
// Neither component winds around the longitude, so each has linking number 0 with a
// meridian, and every meridional disk away from the clasps is crossed exactly twice.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bw/geometry/tube.hpp"

namespace bw::geometry {

struct LinkShape {
    double width;    ///< strand offset w from the tube axis, in tube radii
    double overlap;  ///< half distance e between interlocking hairpin centres
};

inline constexpr LinkShape kBingShape{0.56, 0.3};
inline constexpr LinkShape kWhiteheadShape{0.65, 0.3};

/// Clasp stations as fractions of the longitude.
inline constexpr double kBingClaspA = 1.0 / 8.0;
inline constexpr double kBingClaspB = 5.0 / 8.0;
inline constexpr double kWhiteheadClasp = 3.0 / 8.0;

/// Closed stadium between hairpin centres left < right, starting at the middle of the
/// lower strand. psi(s) gives the direction of the strand plane in the normal disk.
class Stadium {
public:
    Stadium(double left, double right, double width, std::function<double(double)> psi)
        : left_(left), right_(right), width_(width), psi_(std::move(psi)) {
        if (!(right > left) || !(width > 0.0)) throw precondition_error("Stadium: need left < right and positive width");
    }

    double length() const { return 2.0 * (right_ - left_) + 2.0 * std::numbers::pi * width_; }

    LocalPoint at(double u) const {
        const double straight = right_ - left_;
        const double arc = std::numbers::pi * width_;
        u = std::fmod(u + 0.5 * straight, length());
        if (u < 0.0) u += length();
        double s = 0.0, v = 0.0;
        if (u < straight) {
            s = left_ + u;
            v = -width_;
        } else if (u < straight + arc) {
            const double phi = (u - straight) / width_;
            s = right_ + width_ * std::sin(phi);
            v = -width_ * std::cos(phi);
        } else if (u < 2.0 * straight + arc) {
            s = right_ - (u - straight - arc);
            v = width_;
        } else {
            const double phi = (u - 2.0 * straight - arc) / width_;
            s = left_ - width_ * std::sin(phi);
            v = width_ * std::cos(phi);
        }
        const double psi = psi_(s);
        return {s, v * std::cos(psi), v * std::sin(psi)};
    }

    std::vector<LocalPoint> sample(std::size_t n) const {
        std::vector<LocalPoint> pts;
        pts.reserve(n);
        for (std::size_t k = 0; k < n; ++k) pts.push_back(at(length() * static_cast<double>(k) / static_cast<double>(n)));
        return pts;
    }

private:
    double left_, right_, width_;
    std::function<double(double)> psi_;
};

inline double constant_angle(double) { return 0.0; }
inline double quarter_angle(double) { return 0.5 * std::numbers::pi; }

/// The two Bing components for a tube whose longitude is `period` radii long.
inline std::pair<Stadium, Stadium> bing_stadiums(double period, const LinkShape& shape = kBingShape) {
    const double c1 = kBingClaspA * period, c2 = kBingClaspB * period, e = shape.overlap;
    return {Stadium(c1 - e, c2 + e, shape.width, constant_angle), Stadium(c2 - e, c1 + period + e, shape.width, quarter_angle)};
}

/// The Whitehead curve; its strand plane turns smoothly between the two clasp regions.
inline Stadium whitehead_stadium(double period, const LinkShape& shape = kWhiteheadShape) {
    const double c = kWhiteheadClasp * period, e = shape.overlap;
    const double left = c - e, right = c + period + e;
    const double ramp0 = left + 3.0 * (e + shape.width), ramp1 = right - 3.0 * (e + shape.width);
    if (!(ramp1 > ramp0)) throw precondition_error("whitehead_stadium: tube too short for the clasp");
    return Stadium(left, right, shape.width, [=](double s) {
        const double x = std::clamp((s - ramp0) / (ramp1 - ramp0), 0.0, 1.0);
        return 0.5 * std::numbers::pi * x * x * (3.0 - 2.0 * x);
    });
}

/// Image of a local curve under a tube map.
inline PolyCurve place_in(const TubeEmbedding& tube, const std::vector<LocalPoint>& pts) {
    std::vector<Vec3> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.push_back(tube.map(p));
    return PolyCurve(std::move(v));
}

}  // namespace bw::geometry

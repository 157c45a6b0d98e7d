#include "dtnsim/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtnsim {

Vec2 normalized(Vec2 v) {
    const double n = v.norm();
    if (n == 0.0) {
        return {};
    }
    return {v.dx / n, v.dy / n};
}

Meters distance(Position a, Position b) { return (b - a).norm(); }

double direction_cosine(Vec2 u, Vec2 v) {
    if (u.is_zero() || v.is_zero()) {
        return kCosQuarterPi;
    }
    const double c = dot(u, v) / (u.norm() * v.norm());
    return std::clamp(c, -1.0, 1.0);
}

SquareMeters lens_area(Meters d, Meters r) {
    if (!(d >= 0.0)) {
        throw std::invalid_argument("lens_area: centre distance must be non-negative");
    }
    if (!(r > 0.0)) {
        throw std::invalid_argument("lens_area: radius must be positive");
    }
    if (d >= 2.0 * r) {
        return 0.0;
    }
    if (d == 0.0) {
        return std::numbers::pi * r * r;
    }
    const double half = d / 2.0;
    return 2.0 * r * r * std::acos(half / r) - half * std::sqrt(4.0 * r * r - d * d);
}

SectorFrame SectorFrame::make(Position anchor, Position apex, Meters radius) {
    Vec2 axis = normalized(apex - anchor);
    if (axis.is_zero()) {
        axis = {1.0, 0.0};
    }
    return SectorFrame{
        .apex = apex,
        .axis = axis,
        .bisector_a = rotated(axis, kCosQuarterPi, kCosQuarterPi),
        .bisector_b = rotated(axis, kCosQuarterPi, -kCosQuarterPi),
        .radius = radius,
    };
}

Sector forward_sector_of(const SectorFrame& frame, Position candidate) {
    const Vec2 dir = candidate - frame.apex;
    if (dir.is_zero()) {
        return Sector::A;
    }
    if (dot(dir, frame.axis) < 0.0) {
        return Sector::Outside;
    }
    return cross(frame.axis, dir) >= 0.0 ? Sector::A : Sector::B;
}

}  // namespace dtnsim

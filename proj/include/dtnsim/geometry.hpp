#pragma once
/**
 * Planar geometry used by the routing protocols and the mobility model.
 *
 * Positions and displacement vectors are distinct types: subtracting two
 * positions yields a Vec2, and a Position plus a Vec2 is a Position. All
 * angular reasoning is done through dot and cross products; angles are
 * never stored.
 */

#include <cmath>
#include <numbers>

namespace dtnsim {

using Meters = double;
using SquareMeters = double;

/// cos(pi/4). Also the cosine assigned to any pair involving a zero-length
/// vector, which makes a co-located relay candidate score zero utility.
inline constexpr double kCosQuarterPi = std::numbers::sqrt2 / 2.0;

struct Vec2 {
    Meters dx{0.0};
    Meters dy{0.0};

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.dx + b.dx, a.dy + b.dy}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.dx - b.dx, a.dy - b.dy}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) { return {v.dx * s, v.dy * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
    friend constexpr bool operator==(Vec2, Vec2) = default;

    [[nodiscard]] double norm() const { return std::hypot(dx, dy); }
    [[nodiscard]] bool is_zero() const { return dx == 0.0 && dy == 0.0; }
    [[nodiscard]] bool is_finite() const { return std::isfinite(dx) && std::isfinite(dy); }
};

struct Position {
    Meters x{0.0};
    Meters y{0.0};

    friend constexpr Vec2 operator-(Position a, Position b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Position operator+(Position p, Vec2 v) { return {p.x + v.dx, p.y + v.dy}; }
    friend constexpr bool operator==(Position, Position) = default;

    [[nodiscard]] bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

[[nodiscard]] constexpr double dot(Vec2 a, Vec2 b) { return a.dx * b.dx + a.dy * b.dy; }
/// z component of the 3-D cross product; positive when b is counter-clockwise of a.
[[nodiscard]] constexpr double cross(Vec2 a, Vec2 b) { return a.dx * b.dy - a.dy * b.dx; }

/// Unit vector along v, or the zero vector when v has zero length.
[[nodiscard]] Vec2 normalized(Vec2 v);
/// v rotated counter-clockwise by the angle whose cosine/sine are given.
[[nodiscard]] constexpr Vec2 rotated(Vec2 v, double cos_a, double sin_a) {
    return {v.dx * cos_a - v.dy * sin_a, v.dx * sin_a + v.dy * cos_a};
}

[[nodiscard]] Meters distance(Position a, Position b);

/// Cosine of the angle between u and v, clamped to [-1, 1]. Returns exactly
/// cos(pi/4) when either vector has zero length.
[[nodiscard]] double direction_cosine(Vec2 u, Vec2 v);

/// Area of the intersection of two discs of radius r whose centres are d
/// apart (the two-holder overlap of a message). Throws std::invalid_argument
/// for d < 0 or r <= 0.
[[nodiscard]] SquareMeters lens_area(Meters d, Meters r);

enum class Sector { A, B, Outside };

/// Forward quarter-sector geometry around a relaying node.
///
/// The axis points from the anchor (the position the message spreads away
/// from) through the apex. Sector A is the quarter disc counter-clockwise of
/// the axis, centred on the +pi/4 bisector; sector B is its mirror image.
/// Everything behind the line perpendicular to the axis is Outside.
struct SectorFrame {
    Position apex;
    Vec2 axis;
    Vec2 bisector_a;
    Vec2 bisector_b;
    Meters radius{0.0};

    /// Builds the frame for a node at `apex` spreading away from `anchor`.
    /// When the two coincide the axis defaults to +x.
    static SectorFrame make(Position anchor, Position apex, Meters radius);

    [[nodiscard]] Vec2 bisector(Sector s) const { return s == Sector::B ? bisector_b : bisector_a; }
};

/// Classifies an in-range candidate. Ties on the axis go to A; a candidate on
/// the perpendicular belongs to the sector on its side; a co-located
/// candidate is A.
[[nodiscard]] Sector forward_sector_of(const SectorFrame& frame, Position candidate);

}  // namespace dtnsim

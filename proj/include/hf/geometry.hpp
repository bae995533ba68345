#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hf {

// All coordinates are millimeters. The board frame is right-handed with z up;
// the board top surface is z = 0 and the housing occupies z >= 0.

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

Point2 operator+(Point2 a, Point2 b);
Point2 operator-(Point2 a, Point2 b);
Point2 operator*(double s, Point2 p);
double dot(Point2 a, Point2 b);
double cross(Point2 a, Point2 b);
double distance(Point2 a, Point2 b);
double norm(Point2 p);

/// Simple polygon with optional holes. Outer ring counter-clockwise, holes
/// clockwise, >= 3 vertices per ring, no self-intersection.
struct Polygon2 {
  std::vector<Point2> outer;
  std::vector<std::vector<Point2>> holes;

  friend bool operator==(const Polygon2&, const Polygon2&) = default;
};

/// Signed area of a ring (positive for counter-clockwise).
double ring_signed_area(const std::vector<Point2>& ring);

double polygon_area(const Polygon2& poly);

/// Validates ring sizes, winding and self-intersection. Returns a reason on
/// failure, nullopt when the polygon is well formed.
std::optional<std::string> validate_polygon(const Polygon2& poly);

/// Even-odd containment; points on any edge count as inside (also on hole
/// edges, which bound the material side).
bool polygon_contains(const Polygon2& poly, Point2 p);

bool point_in_ring(const std::vector<Point2>& ring, Point2 p);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Distance from a point to the closest edge of any ring of the polygon.
double polygon_boundary_distance(const Polygon2& poly, Point2 p);

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// True when the outer rings overlap: boundary crossing or full containment
/// of one ring inside the other. Holes are ignored.
bool polygons_overlap(const Polygon2& a, const Polygon2& b);

/// Minimum distance between the outer boundaries of two polygons
/// (0 when they touch or overlap).
double polygon_gap(const Polygon2& a, const Polygon2& b);

/// Placement rotation is counter-clockwise degrees about the component
/// center. Quarter turns are evaluated exactly so 90-degree placements
/// round-trip bit-for-bit.
struct Rotation {
  explicit Rotation(double degrees);
  Point2 apply(Point2 p) const;

  double c = 1.0;
  double s = 0.0;
};

/// Rotates each local point about the origin then translates by `position`.
std::vector<Point2> transform_points(const std::vector<Point2>& local,
                                     Point2 position, double rotation_deg);

/// Axis-aligned rectangle in a local frame, usable as a plan footprint.
struct Rect {
  Point2 center;
  double w = 0.0;  // extent along local x
  double h = 0.0;  // extent along local y

  std::vector<Point2> corners() const;  // CCW
};

/// Rectangle corners transformed into the board frame as a CCW ring.
std::vector<Point2> rect_ring(const Rect& r, Point2 position, double rotation_deg);

std::vector<Point2> reversed(std::vector<Point2> ring);

/// Intersection of an infinite line (point + unit direction) with the polygon
/// interior, as sorted parameter intervals along the line. Holes subtract.
std::vector<std::pair<double, double>> line_polygon_intervals(
    const Polygon2& poly, Point2 origin, Point2 dir);

}  // namespace hf

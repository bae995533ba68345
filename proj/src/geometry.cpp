#include "hf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hf {

namespace {
constexpr double kEdgeEps = 1e-12;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 p) { return std::hypot(p.x, p.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }

double ring_signed_area(const std::vector<Point2>& ring) {
  double acc = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % ring.size()];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

double polygon_area(const Polygon2& poly) {
  double area = std::abs(ring_signed_area(poly.outer));
  for (const auto& hole : poly.holes) area -= std::abs(ring_signed_area(hole));
  return area;
}

namespace {

bool ring_self_intersects(const std::vector<Point2>& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = ring[i], b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges sharing an endpoint.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      Point2 c = ring[j], d = ring[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::string> validate_polygon(const Polygon2& poly) {
  if (poly.outer.size() < 3) return "outer ring has fewer than 3 vertices";
  if (ring_signed_area(poly.outer) <= 0.0) return "outer ring is not counter-clockwise";
  if (ring_self_intersects(poly.outer)) return "outer ring self-intersects";
  for (std::size_t h = 0; h < poly.holes.size(); ++h) {
    const auto& hole = poly.holes[h];
    if (hole.size() < 3) return "hole ring has fewer than 3 vertices";
    if (ring_signed_area(hole) >= 0.0) return "hole ring is not clockwise";
    if (ring_self_intersects(hole)) return "hole ring self-intersects";
  }
  return std::nullopt;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  Point2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool point_in_ring(const std::vector<Point2>& ring, Point2 p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = ring[j];
    const Point2& b = ring[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

bool polygon_contains(const Polygon2& poly, Point2 p) {
  for (std::size_t i = 0; i < poly.outer.size(); ++i) {
    if (point_segment_distance(p, poly.outer[i],
                               poly.outer[(i + 1) % poly.outer.size()]) < kEdgeEps)
      return true;
  }
  for (const auto& hole : poly.holes) {
    for (std::size_t i = 0; i < hole.size(); ++i) {
      if (point_segment_distance(p, hole[i], hole[(i + 1) % hole.size()]) < kEdgeEps)
        return true;
    }
  }
  if (!point_in_ring(poly.outer, p)) return false;
  for (const auto& hole : poly.holes) {
    if (point_in_ring(hole, p)) return false;
  }
  return true;
}

double polygon_boundary_distance(const Polygon2& poly, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](const std::vector<Point2>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      best = std::min(best,
                      point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
    }
  };
  scan(poly.outer);
  for (const auto& hole : poly.holes) scan(hole);
  return best;
}

namespace {
int orient_sign(Point2 a, Point2 b, Point2 c) {
  double v = cross(b - a, c - a);
  if (v > kEdgeEps) return 1;
  if (v < -kEdgeEps) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) - kEdgeEps <= p.x && p.x <= std::max(a.x, b.x) + kEdgeEps &&
         std::min(a.y, b.y) - kEdgeEps <= p.y && p.y <= std::max(a.y, b.y) + kEdgeEps;
}
}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  int o1 = orient_sign(a, b, c);
  int o2 = orient_sign(a, b, d);
  int o3 = orient_sign(c, d, a);
  int o4 = orient_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool polygons_overlap(const Polygon2& a, const Polygon2& b) {
  const auto& ra = a.outer;
  const auto& rb = b.outer;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    for (std::size_t j = 0; j < rb.size(); ++j) {
      if (segments_intersect(ra[i], ra[(i + 1) % ra.size()], rb[j],
                             rb[(j + 1) % rb.size()]))
        return true;
    }
  }
  if (point_in_ring(ra, rb.front())) return true;
  if (point_in_ring(rb, ra.front())) return true;
  return false;
}

double polygon_gap(const Polygon2& a, const Polygon2& b) {
  if (polygons_overlap(a, b)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto& ra = a.outer;
  const auto& rb = b.outer;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    for (std::size_t j = 0; j < rb.size(); ++j) {
      best = std::min(best, point_segment_distance(ra[i], rb[j], rb[(j + 1) % rb.size()]));
      best = std::min(best, point_segment_distance(rb[j], ra[i], ra[(i + 1) % ra.size()]));
    }
  }
  return best;
}

Rotation::Rotation(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r < 0.0) r += 360.0;
  if (r == 0.0) {
    c = 1.0; s = 0.0;
  } else if (r == 90.0) {
    c = 0.0; s = 1.0;
  } else if (r == 180.0) {
    c = -1.0; s = 0.0;
  } else if (r == 270.0) {
    c = 0.0; s = -1.0;
  } else {
    double rad = r * kPi / 180.0;
    c = std::cos(rad);
    s = std::sin(rad);
  }
}

Point2 Rotation::apply(Point2 p) const {
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

std::vector<Point2> transform_points(const std::vector<Point2>& local,
                                     Point2 position, double rotation_deg) {
  Rotation rot(rotation_deg);
  std::vector<Point2> out;
  out.reserve(local.size());
  for (Point2 p : local) out.push_back(rot.apply(p) + position);
  return out;
}

std::vector<Point2> Rect::corners() const {
  double hw = 0.5 * w, hh = 0.5 * h;
  return {{center.x - hw, center.y - hh},
          {center.x + hw, center.y - hh},
          {center.x + hw, center.y + hh},
          {center.x - hw, center.y + hh}};
}

std::vector<Point2> rect_ring(const Rect& r, Point2 position, double rotation_deg) {
  return transform_points(r.corners(), position, rotation_deg);
}

std::vector<Point2> reversed(std::vector<Point2> ring) {
  std::reverse(ring.begin(), ring.end());
  return ring;
}

std::vector<std::pair<double, double>> line_polygon_intervals(
    const Polygon2& poly, Point2 origin, Point2 dir) {
  // Parity walk: collect crossing parameters against every ring, then pair
  // them up. Holes flip parity exactly like the outer ring does.
  std::vector<double> ts;
  auto scan = [&](const std::vector<Point2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      Point2 a = ring[i], b = ring[(i + 1) % n];
      Point2 e = b - a;
      double denom = cross(dir, e);
      if (std::abs(denom) < 1e-15) continue;
      // Solve origin + t*dir = a + u*e.
      Point2 w = a - origin;
      double t = cross(w, e) / denom;
      double u = cross(w, dir) / denom;
      if (u >= 0.0 && u < 1.0) ts.push_back(t);
    }
  };
  scan(poly.outer);
  for (const auto& hole : poly.holes) scan(hole);
  std::sort(ts.begin(), ts.end());
  std::vector<std::pair<double, double>> intervals;
  for (std::size_t i = 0; i + 1 < ts.size(); i += 2) {
    intervals.emplace_back(ts[i], ts[i + 1]);
  }
  return intervals;
}

}  // namespace hf

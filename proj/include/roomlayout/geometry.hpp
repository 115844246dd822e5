#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace roomlayout {

/// Image-plane point in pixel units. Origin at the top-left, x to the right,
/// y downwards. Pixel (u, v) of a W x H frame (1-based) has its center at
/// (u, v) and covers [u - 0.5, u + 0.5] x [v - 0.5, v + 0.5].
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
// Positive when b is clockwise from a on screen (y pointing down).
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

using Polygon = std::vector<Point>;

/// Shoelace area. Positive for polygons listed clockwise on screen.
double signed_area(std::span<const Point> polygon);

double distance_to_segment(Point p, Point a, Point b);

/// Closed segment intersection test (touching counts).
bool segments_intersect(Point a, Point b, Point c, Point d, double eps = 1e-12);

/// True when no two non-adjacent edges meet and no adjacent edges fold back.
bool is_simple_polygon(std::span<const Point> polygon);

/// Closed containment: points within `eps` of the boundary count as inside.
bool point_in_polygon(Point p, std::span<const Point> polygon, double eps = 1e-9);

/// Half-plane a*x + b*y + c >= 0.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(Point p) const { return a * p.x + b * p.y + c; }
  HalfPlane flipped() const { return {-a, -b, -c}; }
  /// Half-plane bounded by the line through `p` with direction `d`; keeps the
  /// side clockwise of `d`.
  static HalfPlane clockwise_of(Point p, Point d);
};

/// Sutherland-Hodgman clip of a convex polygon (or any polygon) by one
/// half-plane.
Polygon clip(const Polygon& polygon, const HalfPlane& h);

/// Removes consecutive vertices closer than `eps` (cyclically).
Polygon remove_duplicate_vertices(const Polygon& polygon, double eps = 1e-9);

struct Line {
  Point origin;
  Point direction;
};

std::optional<Point> intersect_lines(const Line& l1, const Line& l2);

}  // namespace roomlayout

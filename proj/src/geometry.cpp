#include "roomlayout/geometry.hpp"

#include <algorithm>

namespace roomlayout {

double signed_area(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double distance_to_segment(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 <= 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + t * d);
}

namespace {

int orientation(Point a, Point b, Point c, double eps) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a), norm(c - a)});
  if (v > eps * scale) return 1;
  if (v < -eps * scale) return -1;
  return 0;
}

bool on_segment(Point p, Point a, Point b, double eps) {
  return std::min(a.x, b.x) - eps <= p.x && p.x <= std::max(a.x, b.x) + eps &&
         std::min(a.y, b.y) - eps <= p.y && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d, double eps) {
  const int o1 = orientation(a, b, c, eps);
  const int o2 = orientation(a, b, d, eps);
  const int o3 = orientation(c, d, a, eps);
  const int o4 = orientation(c, d, b, eps);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    return true;
  }
  if (o1 == 0 && on_segment(c, a, b, eps)) return true;
  if (o2 == 0 && on_segment(d, a, b, eps)) return true;
  if (o3 == 0 && on_segment(a, c, d, eps)) return true;
  if (o4 == 0 && on_segment(b, c, d, eps)) return true;
  return false;
}

bool is_simple_polygon(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    const Point c = polygon[(i + 2) % n];
    if (distance(a, b) <= 1e-12) return false;
    // Adjacent edges folding back onto each other.
    const Point u = b - a;
    const Point v = c - b;
    if (std::abs(cross(u, v)) <= 1e-12 * norm(u) * norm(v) && dot(u, v) < 0.0) {
      return false;
    }
  }
  if (n == 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      const Point c = polygon[j];
      const Point d = polygon[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

bool point_in_polygon(Point p, std::span<const Point> polygon, double eps) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = polygon[i];
    const Point b = polygon[j];
    if (distance_to_segment(p, a, b) <= eps) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

HalfPlane HalfPlane::clockwise_of(Point p, Point d) {
  return {-d.y, d.x, d.y * p.x - d.x * p.y};
}

Polygon clip(const Polygon& polygon, const HalfPlane& h) {
  Polygon out;
  const std::size_t n = polygon.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = polygon[i];
    const Point nxt = polygon[(i + 1) % n];
    const double fc = h.eval(cur);
    const double fn = h.eval(nxt);
    if (fc >= 0.0) out.push_back(cur);
    if ((fc >= 0.0) != (fn >= 0.0)) {
      const double t = fc / (fc - fn);
      // Keep axis-aligned edges exactly on their axis.
      Point q{cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)};
      if (cur.x == nxt.x) q.x = cur.x;
      if (cur.y == nxt.y) q.y = cur.y;
      out.push_back(q);
    }
  }
  return out;
}

Polygon remove_duplicate_vertices(const Polygon& polygon, double eps) {
  Polygon out;
  out.reserve(polygon.size());
  for (const Point& p : polygon) {
    if (out.empty() || distance(out.back(), p) > eps) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= eps) {
    out.pop_back();
  }
  return out;
}

std::optional<Point> intersect_lines(const Line& l1, const Line& l2) {
  const double denom = cross(l1.direction, l2.direction);
  const double scale = norm(l1.direction) * norm(l2.direction);
  if (std::abs(denom) <= 1e-14 * scale) return std::nullopt;
  const double t = cross(l2.origin - l1.origin, l2.direction) / denom;
  return l1.origin + t * l1.direction;
}

}  // namespace roomlayout

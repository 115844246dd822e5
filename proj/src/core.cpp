#include "roomlayout/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace roomlayout {

std::string_view label_name(SurfaceLabel l) {
  switch (l) {
    case SurfaceLabel::kCeiling: return "ceiling";
    case SurfaceLabel::kFloor: return "floor";
    case SurfaceLabel::kFrontWall: return "front_wall";
    case SurfaceLabel::kLeftWall: return "left_wall";
    case SurfaceLabel::kRightWall: return "right_wall";
  }
  return "unknown";
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTopology: return "InvalidTopology";
    case ErrorCode::kDegenerateTarget: return "DegenerateTarget";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDegenerateVP: return "DegenerateVP";
    case ErrorCode::kEmptyHypotheses: return "EmptyHypotheses";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kGenerationFailure: return "GenerationFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double Frame::diagonal() const {
  return std::hypot(double(width), double(height));
}

Polygon Frame::boundary() const {
  return {{left(), top()}, {right(), top()}, {right(), bottom()},
          {left(), bottom()}};
}

namespace {

constexpr SurfaceLabel C = SurfaceLabel::kCeiling;
constexpr SurfaceLabel F = SurfaceLabel::kFloor;
constexpr SurfaceLabel Fr = SurfaceLabel::kFrontWall;
constexpr SurfaceLabel L = SurfaceLabel::kLeftWall;
constexpr SurfaceLabel R = SurfaceLabel::kRightWall;

CornerRole interior(std::vector<SurfaceLabel> faces) {
  return {CornerKind::kInterior, std::move(faces), CornerOrder::kNone};
}

CornerRole border(std::vector<SurfaceLabel> faces,
                  CornerOrder order = CornerOrder::kNone) {
  return {CornerKind::kBorder, std::move(faces), order};
}

// Outline helper: a negative corner index -k-1 means "corner k, then walk
// along the frame to the next corner".
FaceSpec face(SurfaceLabel label, std::initializer_list<int> outline) {
  FaceSpec f{label, {}};
  for (int c : outline) {
    if (c < 0) {
      f.steps.push_back({-c - 1, true});
    } else {
      f.steps.push_back({c, false});
    }
  }
  return f;
}

constexpr int walk(int corner) { return -corner - 1; }

LayoutType make_type(int id, std::vector<CornerRole> roles,
                     std::vector<FaceSpec> faces) {
  LayoutType t;
  t.id = id;
  t.corner_count = static_cast<int>(roles.size());
  t.corner_roles = std::move(roles);
  t.faces = std::move(faces);
  std::set<std::pair<int, int>> seen;
  for (const FaceSpec& f : t.faces) {
    t.visible_faces.push_back(f.label);
    const std::size_t n = f.steps.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (f.steps[k].walk_after) continue;
      int a = f.steps[k].corner;
      int b = f.steps[(k + 1) % n].corner;
      if (a > b) std::swap(a, b);
      if (seen.insert({a, b}).second) t.segments.emplace_back(a, b);
    }
  }
  std::sort(t.visible_faces.begin(), t.visible_faces.end());
  return t;
}

std::vector<LayoutType> build_table() {
  std::vector<LayoutType> table;
  // 1: full box, five faces.
  table.push_back(make_type(
      1,
      {interior({C, L, Fr}), interior({C, Fr, R}), interior({F, Fr, R}),
       interior({F, L, Fr}), border({C, L}), border({C, R}), border({F, R}),
       border({F, L})},
      {face(C, {walk(4), 5, 1, 0}), face(F, {walk(6), 7, 3, 2}),
       face(Fr, {0, 1, 2, 3}), face(L, {walk(7), 4, 0, 3}),
       face(R, {walk(5), 6, 2, 1})}));
  // 2: floor and three walls.
  table.push_back(make_type(
      2,
      {border({L, Fr}), border({Fr, R}), interior({F, L, Fr}),
       interior({F, Fr, R}), border({F, L}), border({F, R})},
      {face(F, {walk(5), 4, 2, 3}), face(Fr, {walk(0), 1, 3, 2}),
       face(L, {walk(4), 0, 2}), face(R, {walk(1), 5, 3})}));
  // 3: ceiling and three walls.
  table.push_back(make_type(
      3,
      {interior({C, L, Fr}), interior({C, Fr, R}), border({Fr, R}),
       border({L, Fr}), border({C, L}), border({C, R})},
      {face(C, {walk(4), 5, 1, 0}), face(Fr, {0, 1, walk(2), 3}),
       face(L, {walk(3), 4, 0}), face(R, {walk(5), 2, 1})}));
  // 4: ceiling and two walls.
  table.push_back(make_type(
      4, {interior({C, L, R}), border({C, L}), border({C, R}), border({L, R})},
      {face(C, {walk(1), 2, 0}), face(L, {walk(3), 1, 0}),
       face(R, {walk(2), 3, 0})}));
  // 5: floor and two walls.
  table.push_back(make_type(
      5, {interior({F, L, R}), border({L, R}), border({F, R}), border({F, L})},
      {face(F, {walk(2), 3, 0}), face(L, {walk(3), 1, 0}),
       face(R, {walk(1), 2, 0})}));
  // 6: ceiling, floor and two walls.
  table.push_back(make_type(
      6,
      {interior({C, L, R}), interior({F, L, R}), border({C, L}),
       border({C, R}), border({F, R}), border({F, L})},
      {face(C, {walk(2), 3, 0}), face(F, {walk(4), 5, 1}),
       face(L, {walk(5), 2, 0, 1}), face(R, {walk(3), 4, 1, 0})}));
  // 7: ceiling, floor and one wall.
  table.push_back(make_type(
      7,
      {border({C, Fr}, CornerOrder::kSmallerX),
       border({C, Fr}, CornerOrder::kLargerX),
       border({F, Fr}, CornerOrder::kLargerX),
       border({F, Fr}, CornerOrder::kSmallerX)},
      {face(C, {walk(0), 1}), face(F, {walk(2), 3}),
       face(Fr, {walk(1), 2, walk(3), 0})}));
  // 8: three walls.
  table.push_back(make_type(
      8,
      {border({L, Fr}, CornerOrder::kSmallerY),
       border({Fr, R}, CornerOrder::kSmallerY),
       border({Fr, R}, CornerOrder::kLargerY),
       border({L, Fr}, CornerOrder::kLargerY)},
      {face(Fr, {walk(0), 1, walk(2), 3}), face(L, {walk(3), 0}),
       face(R, {walk(1), 2})}));
  // 9: ceiling and one wall.
  table.push_back(make_type(9,
                            {border({C, Fr}, CornerOrder::kSmallerX),
                             border({C, Fr}, CornerOrder::kLargerX)},
                            {face(C, {walk(0), 1}), face(Fr, {walk(1), 0})}));
  // 10: floor and one wall.
  table.push_back(make_type(10,
                            {border({F, Fr}, CornerOrder::kSmallerX),
                             border({F, Fr}, CornerOrder::kLargerX)},
                            {face(F, {walk(1), 0}), face(Fr, {walk(0), 1})}));
  // 11: two walls.
  table.push_back(make_type(11,
                            {border({L, R}, CornerOrder::kSmallerY),
                             border({L, R}, CornerOrder::kLargerY)},
                            {face(L, {walk(1), 0}), face(R, {walk(0), 1})}));
  // 12: a single wall filling the frame.
  table.push_back(make_type(12, {}, {FaceSpec{Fr, {}}}));
  return table;
}

const std::vector<LayoutType>& table() {
  static const std::vector<LayoutType> t = build_table();
  return t;
}

bool on_edge(double v, double edge) { return std::abs(v - edge) <= 1e-9; }

}  // namespace

bool is_known_type(int id) { return id >= 1 && id <= kMaxTypeId; }

const LayoutType& layout_type(int id) {
  if (!is_known_type(id)) {
    throw LayoutError(ErrorCode::kInvalidArgument,
                      "unknown layout type " + std::to_string(id));
  }
  return table()[id - 1];
}

std::span<const LayoutType> all_layout_types() { return table(); }

double border_distance(Point p, const Frame& f) {
  return std::min({p.x - f.left(), f.right() - p.x, p.y - f.top(),
                   f.bottom() - p.y});
}

Point project_to_border(Point p, const Frame& f) {
  Point q{std::clamp(p.x, f.left(), f.right()),
          std::clamp(p.y, f.top(), f.bottom())};
  const double dl = q.x - f.left();
  const double dr = f.right() - q.x;
  const double dt = q.y - f.top();
  const double db = f.bottom() - q.y;
  const double dx = std::min(dl, dr);
  const double dy = std::min(dt, db);
  if (std::min(dx, dy) <= 0.0) return q;
  const auto snap_x = [&] { q.x = dl <= dr ? f.left() : f.right(); };
  const auto snap_y = [&] { q.y = dt <= db ? f.top() : f.bottom(); };
  if (dx <= kBorderTolerance && dy <= kBorderTolerance) {
    snap_x();
    snap_y();
  } else if (dx <= dy) {
    snap_x();
  } else {
    snap_y();
  }
  return q;
}

double perimeter_position(Point p, const Frame& f) {
  const double w = f.width;
  const double h = f.height;
  if (on_edge(p.y, f.top())) return p.x - f.left();
  if (on_edge(p.x, f.right())) return w + (p.y - f.top());
  if (on_edge(p.y, f.bottom())) return w + h + (f.right() - p.x);
  return 2.0 * w + h + (f.bottom() - p.y);
}

namespace {

// Appends the frame corners met when walking clockwise from a to b.
void append_walk(Point a, Point b, const Frame& f, Polygon& out) {
  const double w = f.width;
  const double h = f.height;
  const double perimeter = 2.0 * (w + h);
  const double sa = perimeter_position(a, f);
  double sb = perimeter_position(b, f);
  if (sb < sa) sb += perimeter;
  const std::array<double, 4> corner_pos = {0.0, w, w + h, 2.0 * w + h};
  const Polygon corners = f.boundary();
  for (int lap = 0; lap < 2; ++lap) {
    for (int k = 0; k < 4; ++k) {
      const double s = corner_pos[k] + lap * perimeter;
      if (s > sa + 1e-9 && s < sb - 1e-9) out.push_back(corners[k]);
    }
  }
}

}  // namespace

std::vector<Point> resolved_corners(const Layout& l) {
  const LayoutType& t = layout_type(l.type);
  std::vector<Point> pts(l.points.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool border_role = i < t.corner_roles.size() &&
                             t.is_border(static_cast<int>(i));
    pts[i] = border_role ? project_to_border(l.points[i], l.frame)
                         : l.points[i];
  }
  return pts;
}

std::vector<FacePolygon> faces_of(const Layout& l) {
  if (!is_known_type(l.type)) {
    throw LayoutError(ErrorCode::kInvalidTopology,
                      "unknown layout type " + std::to_string(l.type));
  }
  const LayoutType& t = layout_type(l.type);
  if (static_cast<int>(l.points.size()) != t.corner_count) {
    throw LayoutError(ErrorCode::kInvalidTopology,
                      "type " + std::to_string(l.type) + " needs " +
                          std::to_string(t.corner_count) + " corners, got " +
                          std::to_string(l.points.size()));
  }
  if (l.frame.width < 1 || l.frame.height < 1) {
    throw LayoutError(ErrorCode::kInvalidTopology, "empty frame");
  }
  for (const Point& p : l.points) {
    if (!is_finite(p)) {
      throw LayoutError(ErrorCode::kInvalidTopology, "non-finite corner");
    }
  }
  const std::vector<Point> pts = resolved_corners(l);

  std::vector<FacePolygon> faces;
  faces.reserve(t.faces.size());
  double total = 0.0;
  for (const FaceSpec& spec : t.faces) {
    Polygon poly;
    if (spec.steps.empty()) {
      poly = l.frame.boundary();
    } else {
      const std::size_t n = spec.steps.size();
      for (std::size_t k = 0; k < n; ++k) {
        const FaceStep& s = spec.steps[k];
        poly.push_back(pts[s.corner]);
        if (s.walk_after) {
          append_walk(pts[s.corner], pts[spec.steps[(k + 1) % n].corner],
                      l.frame, poly);
        }
      }
      poly = remove_duplicate_vertices(poly, 1e-9);
    }
    const double area = signed_area(poly);
    if (poly.size() < 3 || area <= 1e-9) {
      throw LayoutError(ErrorCode::kInvalidTopology,
                        std::string(label_name(spec.label)) +
                            " polygon is empty or inverted");
    }
    if (!is_simple_polygon(poly)) {
      throw LayoutError(ErrorCode::kInvalidTopology,
                        std::string(label_name(spec.label)) +
                            " polygon is self-intersecting");
    }
    total += area;
    faces.push_back({spec.label, std::move(poly)});
  }
  if (std::abs(total - l.frame.area()) > 1e-6 * l.frame.area()) {
    std::ostringstream os;
    os << "faces cover " << total << " of " << l.frame.area() << " px^2";
    throw LayoutError(ErrorCode::kInvalidTopology, os.str());
  }
  return faces;
}

std::optional<std::string> validation_error(const Layout& l) {
  if (!is_known_type(l.type)) return "unknown layout type";
  const LayoutType& t = layout_type(l.type);
  if (static_cast<int>(l.points.size()) != t.corner_count) {
    return "corner count does not match the layout type";
  }
  if (l.frame.width < 1 || l.frame.height < 1) return "empty frame";
  constexpr double eps = 1e-9;
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    const Point p = l.points[i];
    if (!is_finite(p)) return "non-finite corner";
    if (t.is_border(static_cast<int>(i))) {
      const double d = border_distance(p, l.frame);
      if (d < -eps || d > kBorderTolerance + eps) {
        return "border corner " + std::to_string(i + 1) +
               " is not on the frame boundary";
      }
    } else {
      if (p.x < 1.0 - eps || p.x > l.frame.width + eps || p.y < 1.0 - eps ||
          p.y > l.frame.height + eps) {
        return "interior corner " + std::to_string(i + 1) +
               " lies outside the frame";
      }
    }
  }
  try {
    faces_of(l);
  } catch (const LayoutError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

bool validate(const Layout& l) { return !validation_error(l).has_value(); }

Layout scale_layout(const Layout& l, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw LayoutError(ErrorCode::kDegenerateTarget,
                      "target frame must be at least 1x1");
  }
  const double sx = double(target_w) / l.frame.width;
  const double sy = double(target_h) / l.frame.height;
  const Frame src = l.frame;
  const Frame dst{target_w, target_h};
  const LayoutType* t = is_known_type(l.type) ? &layout_type(l.type) : nullptr;

  Layout out{l.type, {}, dst};
  out.points.reserve(l.points.size());
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    const Point p = l.points[i];
    Point q{p.x * sx, p.y * sy};
    const bool border_role = t != nullptr && i < t->corner_roles.size() &&
                             t->is_border(static_cast<int>(i));
    if (border_role) {
      // Border corners keep their pixel offset from the edge they sit on so
      // that they stay on the boundary at any scale.
      const double dl = p.x - src.left();
      const double dr = src.right() - p.x;
      const double dt = p.y - src.top();
      const double db = src.bottom() - p.y;
      if (std::min(dl, dr) <= kBorderTolerance + 1e-9) {
        q.x = dl <= dr ? dst.left() + dl : dst.right() - dr;
      }
      if (std::min(dt, db) <= kBorderTolerance + 1e-9) {
        q.y = dt <= db ? dst.top() + dt : dst.bottom() - db;
      }
    }
    out.points.push_back(q);
  }
  return out;
}

}  // namespace roomlayout

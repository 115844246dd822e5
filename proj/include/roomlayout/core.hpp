#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "roomlayout/geometry.hpp"

namespace roomlayout {

/// Room surfaces. The numeric values are also the on-disk segmentation
/// encoding.
enum class SurfaceLabel : std::uint8_t {
  kCeiling = 1,
  kFloor = 2,
  kFrontWall = 3,
  kLeftWall = 4,
  kRightWall = 5,
};

inline constexpr int kNumLabels = 5;

constexpr int label_index(SurfaceLabel l) { return static_cast<int>(l) - 1; }
constexpr SurfaceLabel label_from_index(int i) {
  return static_cast<SurfaceLabel>(i + 1);
}
constexpr bool is_wall(SurfaceLabel l) {
  return l == SurfaceLabel::kFrontWall || l == SurfaceLabel::kLeftWall ||
         l == SurfaceLabel::kRightWall;
}
std::string_view label_name(SurfaceLabel l);

enum class ErrorCode {
  kInvalidTopology,
  kDegenerateTarget,
  kDimensionMismatch,
  kDegenerateVP,
  kEmptyHypotheses,
  kEmptyPool,
  kGenerationFailure,
  kParseError,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class LayoutError : public std::runtime_error {
 public:
  LayoutError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Image frame. The continuous frame region is [0.5, width + 0.5] x
/// [0.5, height + 0.5], so its area is width * height.
struct Frame {
  int width = 224;
  int height = 224;

  double left() const { return 0.5; }
  double top() const { return 0.5; }
  double right() const { return width + 0.5; }
  double bottom() const { return height + 0.5; }
  double area() const { return double(width) * double(height); }
  double diagonal() const;
  Polygon boundary() const;  // clockwise, starting at the top-left corner

  friend bool operator==(const Frame&, const Frame&) = default;
};

inline constexpr int kDefaultFrameSize = 224;

// ---------------------------------------------------------------------------
// Layout type topology.
//
// Ids 1..11 are the LSUN challenge types (LSUN index = id - 1). Id 12 is an
// extra single-wall layout with no corners; it is what ray sampling produces
// when no boundary ray is used. See docs/layout_types.md for diagrams.

inline constexpr int kNumLsunTypes = 11;
inline constexpr int kSingleWallType = 12;
inline constexpr int kMaxTypeId = 12;

enum class CornerKind { kInterior, kBorder };

/// Disambiguates two border corners that sit on the same face boundary.
enum class CornerOrder { kNone, kSmallerX, kLargerX, kSmallerY, kLargerY };

struct CornerRole {
  CornerKind kind = CornerKind::kInterior;
  std::vector<SurfaceLabel> faces;  // faces meeting at the corner
  CornerOrder order = CornerOrder::kNone;
};

/// One vertex of a face outline. When `walk_after` is set, the outline
/// continues clockwise along the frame boundary to the next corner.
struct FaceStep {
  int corner = 0;
  bool walk_after = false;
};

struct FaceSpec {
  SurfaceLabel label;
  std::vector<FaceStep> steps;  // clockwise; empty means the whole frame
};

struct LayoutType {
  int id = 0;
  int corner_count = 0;
  std::vector<SurfaceLabel> visible_faces;
  std::vector<CornerRole> corner_roles;
  std::vector<FaceSpec> faces;
  /// Interior face boundaries as corner index pairs (drawn by the edge
  /// renderer). Derived from `faces`.
  std::vector<std::pair<int, int>> segments;

  int lsun_index() const { return id - 1; }
  bool is_border(int corner) const {
    return corner_roles[corner].kind == CornerKind::kBorder;
  }
};

bool is_known_type(int id);
/// Throws LayoutError(kInvalidArgument) for unknown ids.
const LayoutType& layout_type(int id);
/// All types, ids 1..12 in order.
std::span<const LayoutType> all_layout_types();

// ---------------------------------------------------------------------------

/// Parameterized layout: type id plus ordered corners in `frame`.
struct Layout {
  int type = 1;
  std::vector<Point> points;
  Frame frame;

  const LayoutType& topology() const { return layout_type(type); }
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct FacePolygon {
  SurfaceLabel label;
  Polygon polygon;
};

/// Distance from `p` to the frame boundary (negative outside the frame).
double border_distance(Point p, const Frame& frame);

/// Tolerance for border corners.
inline constexpr double kBorderTolerance = 0.5;

/// Nearest point on the frame boundary used for polygon construction. A
/// point within tolerance of two edges snaps to the frame corner.
Point project_to_border(Point p, const Frame& frame);

/// Clockwise arc length of a boundary point, starting at the top-left corner.
double perimeter_position(Point on_border, const Frame& frame);

/// Corner positions used for geometry: border corners projected onto the
/// frame boundary, interior corners unchanged.
std::vector<Point> resolved_corners(const Layout& l);

/// Face polygons, one per visible face, clockwise. Throws
/// LayoutError(kInvalidTopology) when the corners do not produce a partition
/// of the frame into simple polygons.
std::vector<FacePolygon> faces_of(const Layout& l);

/// Reason the layout is invalid, or nullopt when it is valid.
std::optional<std::string> validation_error(const Layout& l);
bool validate(const Layout& l);

/// Linear rescale: x by target_w / frame.width, y by target_h / frame.height.
Layout scale_layout(const Layout& l, int target_w, int target_h);

}  // namespace roomlayout

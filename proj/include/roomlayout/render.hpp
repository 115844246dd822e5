#pragma once

#include <cstdint>
#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/maps.hpp"

namespace roomlayout {

struct RenderConfig {
  int line_width_px = 6;
  double blur_sigma = 6.0;
  int frame_w = kDefaultFrameSize;

  /// Throws LayoutError(kInvalidArgument) when a field is out of range.
  void check() const;
};

/// Normalized Gaussian kernel of radius ceil(3 sigma), length 2r + 1.
std::vector<double> gaussian_kernel(double sigma);

/// Separable blur with zero padding. Throws kInvalidArgument if sigma <= 0.
HeatMap gaussian_blur(const HeatMap& m, double sigma);

/// Closed pixel interval [first, last] of one row, 0-based columns.
struct Span {
  int first = 0;
  int last = -1;
};

/// Pixels whose centers lie within `radius` of the segment a-b, as sorted,
/// merged spans per row.
void stroke_spans(Point a, Point b, double radius, const Frame& frame,
                  std::vector<std::vector<Span>>& rows);

/// Binary mask of the layout's interior boundary strokes (no blur).
HeatMap stroke_mask(const Layout& l, int line_width_px);

/// Run of equally labelled pixels in one row, 0-based inclusive columns.
struct LabelRun {
  int first = 0;
  int last = -1;
  std::uint8_t label = 0;
};

/// Rendering with reusable buffers. One instance per thread; not shareable.
class Renderer {
 public:
  explicit Renderer(const RenderConfig& cfg = {});

  const RenderConfig& config() const { return cfg_; }

  /// Per-row label runs of `faces` (given in label order) over `frame`.
  /// Runs of a row are sorted, disjoint and cover the row. A pixel center on
  /// a shared boundary goes to the lowest label.
  const std::vector<std::vector<LabelRun>>& seg_runs(
      const std::vector<FacePolygon>& faces, const Frame& frame);
  void render_seg(const std::vector<FacePolygon>& faces, const Frame& frame,
                  SegMap& out);

  /// Rasterizes and horizontally blurs the boundary strokes of `l` (in its
  /// own frame); edge_row then yields the finished rows.
  void prepare_edges(const Layout& l);
  /// Row j of the prepared edge map: `values[i]` for i in [first, last],
  /// zero elsewhere. Returns false when the whole row is zero. The pointer
  /// is valid until the next call.
  bool edge_row(int j, int& first, int& last, const float*& values);
  /// Blurred, clamped boundary strokes of `l` in its own frame.
  void render_edges(const Layout& l, HeatMap& out);

 private:
  RenderConfig cfg_;
  std::vector<double> kernel_;
  std::vector<double> kernel_prefix_;
  std::vector<float> kernel_f_;
  std::vector<float> cumulative_;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::vector<Span>> rows_;
  std::vector<float> tmp_;
  std::vector<int> tmp_first_;
  std::vector<int> tmp_last_;
  std::vector<float> row_out_;
  std::vector<std::vector<LabelRun>> runs_;
  std::vector<LabelRun> claim_;
  std::vector<double> crossings_;
  std::vector<double> face_ymin_;
  std::vector<double> face_ymax_;
};

/// Segmentation map of `l` in its own frame.
SegMap render_seg(const Layout& l);
/// Segmentation map after scaling `l` to a frame_w x frame_w frame.
SegMap render_seg(const Layout& l, int frame_w);
/// Edge map of `l` after scaling it to cfg.frame_w x cfg.frame_w.
HeatMap render_edges(const Layout& l, const RenderConfig& cfg = {});

}  // namespace roomlayout

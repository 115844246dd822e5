#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "roomlayout/core.hpp"

namespace roomlayout {

/// Dense row-major grid of reals in [0, 1]. Index (i, j) is column i, row j,
/// both 0-based; it corresponds to the pixel centered at (i + 1, j + 1).
class HeatMap {
 public:
  HeatMap() = default;
  HeatMap(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double& at(int i, int j) { return values_[std::size_t(j) * width_ + i]; }
  double at(int i, int j) const { return values_[std::size_t(j) * width_ + i]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const HeatMap& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }
  /// Clamps every value into [0, 1].
  void clamp01();

  friend bool operator==(const HeatMap&, const HeatMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Dense row-major grid of surface labels stored as their 1..5 codes.
class SegMap {
 public:
  SegMap() = default;
  SegMap(int width, int height, SurfaceLabel fill = SurfaceLabel::kFrontWall);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  std::uint8_t& at(int i, int j) { return labels_[std::size_t(j) * width_ + i]; }
  std::uint8_t at(int i, int j) const {
    return labels_[std::size_t(j) * width_ + i];
  }
  SurfaceLabel label(int i, int j) const {
    return static_cast<SurfaceLabel>(at(i, j));
  }

  std::vector<std::uint8_t>& labels() { return labels_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  bool same_shape(const SegMap& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }
  /// Per-label pixel counts, indexed by label_index.
  std::array<std::size_t, kNumLabels> histogram() const;

  friend bool operator==(const SegMap&, const SegMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> labels_;
};

/// Five per-surface belief maps, indexed by label_index.
struct SemanticStack {
  std::array<HeatMap, kNumLabels> channels;

  const HeatMap& channel(SurfaceLabel l) const {
    return channels[label_index(l)];
  }
};

// PGM (binary P5, maxval 255) serialization. Heat map values are stored as
// round(255 * v); segmentation maps store the label codes 1..5 directly.
// Readers throw LayoutError(kParseError) on anything else.
void write_heatmap_pgm(const std::filesystem::path& path, const HeatMap& m);
HeatMap read_heatmap_pgm(const std::filesystem::path& path);
void write_segmap_pgm(const std::filesystem::path& path, const SegMap& m);
SegMap read_segmap_pgm(const std::filesystem::path& path);

/// One P5 image of height 5 * w holding the channels top to bottom.
SemanticStack read_stack_pgm(const std::filesystem::path& path);
void write_stack_pgm(const std::filesystem::path& path,
                     const SemanticStack& stack);
/// Five files <prefix>_1.pgm .. <prefix>_5.pgm.
SemanticStack read_stack_files(const std::string& prefix);

/// Bicubic (Keys, a = -0.5) resize with edge clamping; output clamped to
/// [0, 1]. Identity when the size already matches.
HeatMap resize_cubic(const HeatMap& m, int width, int height);
/// Nearest-neighbour resize for label maps.
SegMap resize_nearest(const SegMap& m, int width, int height);

}  // namespace roomlayout

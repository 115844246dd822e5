#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/render.hpp"

namespace roomlayout {

struct ScoreConfig {
  double lambda = 0.5;
  double s2_normalizer = kDefaultFrameSize;
  /// Permute only the three wall labels; otherwise all five.
  bool wall_only_matching = true;

  void check() const;
};

struct ScoredLayout {
  Layout layout;
  double score = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Per-pixel argmax over the five channels, ties to the lowest label.
/// Throws kDimensionMismatch when channel sizes differ.
SegMap argmax_labels(const SemanticStack& stack);

/// confusion[a][b] = number of pixels labelled a in the first map and b in
/// the second, label indices 0..4.
using Confusion = std::array<std::array<std::size_t, kNumLabels>, kNumLabels>;
Confusion confusion_matrix(const SegMap& a, const SegMap& b);

/// Best matched accuracy from a confusion matrix over `total` pixels.
double matched_accuracy(const Confusion& c, std::size_t total, bool wall_only);

double s1_matched_accuracy(const SegMap& a, const SegMap& b,
                           const ScoreConfig& cfg = {});
double s2_edge_distance(const HeatMap& a, const HeatMap& b,
                        const ScoreConfig& cfg = {});

/// Renders `l` at the size of M (scaling it if needed) and scores it.
ScoredLayout score_layout(const Layout& l, const SegMap& M, const HeatMap& E,
                          const ScoreConfig& cfg = {},
                          const RenderConfig& rcfg = {});

/// Private buffers for one scoring worker.
struct ScoreWorkspace {
  explicit ScoreWorkspace(const RenderConfig& rcfg) : renderer(rcfg) {}
  Renderer renderer;
};

/// Scores many layouts against one (M, E) pair.
class LayoutScorer {
 public:
  LayoutScorer(SegMap M, HeatMap E, const ScoreConfig& cfg = {},
               const RenderConfig& rcfg = {});

  const SegMap& seg() const { return M_; }
  const HeatMap& edges() const { return E_; }
  const Frame& frame() const { return frame_; }
  const ScoreConfig& score_config() const { return cfg_; }
  const RenderConfig& render_config() const { return rcfg_; }

  ScoreWorkspace make_workspace() const { return ScoreWorkspace(rcfg_); }

  /// Throws kInvalidTopology for invalid layouts.
  ScoredLayout score(const Layout& l, ScoreWorkspace& ws) const;
  ScoredLayout score(const Layout& l) const;

  /// Parallel over layouts (OpenMP); output order matches input.
  std::vector<ScoredLayout> score_batch(std::span<const Layout> layouts) const;
  /// Single-threaded reference for score_batch.
  std::vector<ScoredLayout> score_batch_serial(
      std::span<const Layout> layouts) const;

 private:
  SegMap M_;
  HeatMap E_;
  Frame frame_;
  ScoreConfig cfg_;
  RenderConfig rcfg_;
  // Row prefix counts of each label of M: [(j * 5 + label_index) * (w + 1) + i].
  std::vector<std::uint32_t> label_prefix_;
  std::vector<float> edges_f_;
  // Row prefix sums of E^2: [j * (w + 1) + i].
  std::vector<double> sq_prefix_;
};

}  // namespace roomlayout

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roomlayout/hypgen.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/metrics.hpp"
#include "roomlayout/refine.hpp"
#include "roomlayout/render.hpp"
#include "roomlayout/score.hpp"

namespace roomlayout {

struct PipelineConfig {
  RenderConfig render;
  ScoreConfig score;
  SamplingConfig sampling;
  bool no_sampling = false;
  bool no_pool = false;
  bool refine = true;

  /// Throws kEmptyHypotheses when both sources are disabled and
  /// kInvalidArgument for bad numeric fields.
  void check() const;
  /// Human-readable listing of every field, one "name = value" per line.
  std::string describe() const;
};

struct EstimateResult {
  Layout layout;           // in the frame of the input maps
  ScoredLayout working;    // in the w x w working frame
  std::vector<ScoredLayout> ray_hypotheses;
  std::vector<ScoredLayout> pool_hypotheses;
  std::vector<ScoredLayout> combined;
  /// Best of combined, refined when cfg.refine is set.
  OptimizeResult optimized;
  std::size_t composed = 0;  // ray-sampled layouts before ranking
  /// Why ray sampling produced nothing, when it failed and the pool was used.
  std::string sampling_note;
};

/// Maps and vanishing points in working-frame coordinates, after resizing.
struct WorkingMaps {
  HeatMap edges;
  SegMap seg;
};

/// Resizes E (cubic) and M (nearest) to w x w. Throws kDimensionMismatch when
/// E and M differ in size.
WorkingMaps to_working_frame(const HeatMap& E, const SegMap& M, int w);

/// Full estimate for one image. `vps` are in working-frame coordinates and
/// are required unless cfg.no_sampling. A null or disabled pool skips pool
/// hypotheses. Ray sampling falling back to the pool is reported in
/// sampling_note; with no hypotheses at all throws kEmptyHypotheses.
EstimateResult estimate(const HeatMap& E, const SegMap& M,
                        const std::optional<VanishingTriple>& vps,
                        const LayoutPool* pool, const PipelineConfig& cfg);

/// Same, on maps already in the working frame, using a prepared scorer.
EstimateResult estimate_working(const LayoutScorer& scorer,
                                const std::optional<VanishingTriple>& vps,
                                const LayoutPool* pool, const PipelineConfig& cfg);

struct EvalRow {
  std::string id;
  EvalRecord record;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  EvalRecord mean;
  double type_accuracy_pct = 0.0;

  /// Header, one row per image and a final "mean" row.
  std::string to_csv() const;
};

/// Ground truth of `id`: gt_dir/<id>/gt.json or gt_dir/<id>.json.
/// Predictions: pred_dir/<id>.json, with optional <id>.edge.pgm and
/// <id>.seg.pgm holding predicted maps (the layout's own renders otherwise).
/// Throws kInvalidArgument listing ids present on only one side.
EvalReport run_eval(const std::filesystem::path& pred_dir,
                    const std::filesystem::path& gt_dir,
                    const ScoreConfig& cfg = {}, const RenderConfig& rcfg = {});

/// Evaluation of one prediction against ground truth in the GT frame.
EvalRecord evaluate_prediction(const Layout& pred, const Layout& gt,
                               const HeatMap* pred_edges, const SegMap* pred_seg,
                               const ScoreConfig& cfg = {},
                               const RenderConfig& rcfg = {});

}  // namespace roomlayout

#pragma once

#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/score.hpp"

namespace roomlayout {

struct EvalRecord {
  double pixel_error_pct = 0.0;
  double corner_error_pct = 0.0;
  bool type_correct = false;
  double edge_error = 0.0;
  double semantic_error_pct = 0.0;
};

/// Percentage of pixels mislabelled under the best label matching.
double pixel_error(const SegMap& pred, const SegMap& gt, const ScoreConfig& cfg = {});
/// Renders `pred` at the size of `gt` first.
double pixel_error(const Layout& pred, const SegMap& gt, const ScoreConfig& cfg = {});

/// Mean corner displacement as a percentage of the W x H frame diagonal.
/// Layouts of the same type are matched in corner order; otherwise by a
/// minimum-cost assignment where unmatched corners cost one diagonal, and
/// the total is averaged over the larger corner count.
double corner_error(const Layout& pred, const Layout& gt, int W, int H);

double type_accuracy(const std::vector<EvalRecord>& records);

/// Unnormalized Euclidean distance between edge maps.
double edge_error(const HeatMap& E, const HeatMap& gtE);

double semantic_error(const SegMap& M, const SegMap& gtM, const ScoreConfig& cfg = {});

/// Column means of the numeric fields; type_correct holds the majority.
EvalRecord mean_record(const std::vector<EvalRecord>& records);

}  // namespace roomlayout

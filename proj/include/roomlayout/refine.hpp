#pragma once

#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/score.hpp"

namespace roomlayout {

struct NeighborSet {
  Point center;
  std::vector<Point> candidates;  // center first
};

/// Candidate moves for a corner at integer position `p`. Interior corners
/// get their 4-neighbourhood; border corners move along the frame edge(s)
/// they sit on. Candidates outside [1, width] x [1, height] are dropped.
NeighborSet neighbor_set(Point p, CornerKind kind, const Frame& frame);
NeighborSet neighbor_set(const Layout& l, int corner);

/// Corners rounded to the nearest pixel and clamped to [1, width] x
/// [1, height].
Layout round_layout(const Layout& l);

struct RefineTrace {
  std::vector<double> accepted_scores;  // starting score first
  int sweeps = 0;
  std::size_t evaluations = 0;
};

/// Greedy per-corner ascent. Each corner in order tries its neighbour set
/// and takes any strict improvement immediately; sweeps repeat until one
/// yields no improvement. The input itself is returned when its rounded
/// version is invalid or when it outscores the refined result.
ScoredLayout refine_layout(const Layout& l, const LayoutScorer& scorer,
                           ScoreWorkspace& ws, RefineTrace* trace = nullptr);
ScoredLayout refine_layout(const Layout& l, const LayoutScorer& scorer,
                           RefineTrace* trace = nullptr);

struct OptimizeResult {
  ScoredLayout best;
  std::size_t best_index = 0;        // earliest among equal best scores
  std::vector<ScoredLayout> refined;  // one per hypothesis, same order
};

/// Refines every hypothesis in parallel and returns the best. Throws
/// kEmptyHypotheses for an empty list.
OptimizeResult optimize(const std::vector<ScoredLayout>& hypotheses,
                        const LayoutScorer& scorer);
/// Single-threaded reference for optimize.
OptimizeResult optimize_serial(const std::vector<ScoredLayout>& hypotheses,
                               const LayoutScorer& scorer);

}  // namespace roomlayout

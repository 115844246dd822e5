#pragma once

#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/score.hpp"

namespace roomlayout {

/// Vertical, farther horizontal and closer horizontal vanishing points.
struct VanishingTriple {
  Point vp1;
  Point vp2;
  Point vp3;

  bool distinct() const { return !(vp1 == vp2) && !(vp1 == vp3) && !(vp2 == vp3); }
};

struct SamplingConfig {
  int H = 30;        // sectors per vanishing point
  double D = 0.03;   // local-maximum margin
  int N = 3;         // rays per selected sector
  int K1 = 2;        // ray-sampled hypotheses kept
  int K2 = 2;        // pool hypotheses kept

  void check() const;
};

struct SectorProfile {
  Point vp;
  int H = 0;
  std::vector<double> angles;     // H + 1 boundaries, strictly increasing
  std::vector<double> strengths;  // mean edge value per sector
};

struct Ray {
  Point origin;
  double angle = 0.0;
  int sector = -1;  // 0-based sector index, -1 when unknown

  Point direction() const;
};

/// Splits the angle range of the frame as seen from `vp` into H equal
/// sectors and averages E within each. A vanishing point inside the frame
/// sees the full circle. Throws kDegenerateVP when vp is within 1 px of the
/// frame center.
SectorProfile sector_profile(const HeatMap& E, Point vp, int H);

/// 0-based indices of sectors that are strict local maxima exceeding one
/// neighbour by more than D, with zero padding at both ends.
std::vector<int> select_sectors(const std::vector<double>& d, double D);

/// N rays per selected sector, evenly spaced strictly inside it.
std::vector<Ray> sample_rays(const SectorProfile& profile,
                             const std::vector<int>& selected, int N);

/// All valid layouts formed from at most two vp1 rays and at most two vp2
/// rays (at most one ray per sector when sectors are known), in a fixed
/// deterministic order without duplicates.
std::vector<Layout> compose_layouts(const std::vector<Ray>& rays1,
                                    const std::vector<Ray>& rays2,
                                    const VanishingTriple& vps,
                                    const Frame& frame);

/// Geometry of a single ray configuration: a layout whose boundaries are
/// the given vp1 lines and vp2 lines, completed with vp3 lines. Returns
/// nullopt for degenerate configurations.
std::optional<Layout> compose_layout(const std::vector<Line>& vertical,
                                     const std::vector<Line>& horizontal,
                                     Point vp3, const Frame& frame);

/// Profiles, sector selection, ray sampling and composition for one image.
std::vector<Layout> sample_layouts(const HeatMap& E, const VanishingTriple& vps,
                                   const SamplingConfig& cfg);

struct LayoutPool {
  Frame frame;
  std::vector<Layout> entries;

  /// Throws kInvalidArgument when an entry is invalid or in another frame.
  void check() const;
};

/// Best layout of each type, sorted by score descending (ties by input
/// order), cut to the first k.
std::vector<ScoredLayout> best_per_type(const std::vector<ScoredLayout>& scored,
                                        int k);

/// Ray-sampled hypotheses. Throws kEmptyHypotheses when nothing composes.
std::vector<ScoredLayout> generate_ray_hypotheses(const LayoutScorer& scorer,
                                                  const VanishingTriple& vps,
                                                  const SamplingConfig& cfg);

/// Pool hypotheses. Throws kEmptyPool for an empty pool.
std::vector<ScoredLayout> generate_pool_hypotheses(const LayoutScorer& scorer,
                                                   const LayoutPool& pool,
                                                   int K2);

/// Union without duplicates (same type and points after rounding to 1e-6).
std::vector<ScoredLayout> combine_hypotheses(const std::vector<ScoredLayout>& a,
                                             const std::vector<ScoredLayout>& b);

/// True when both layouts have the same type and the same corners after
/// rounding to 1e-6.
bool same_layout(const Layout& a, const Layout& b);

}  // namespace roomlayout

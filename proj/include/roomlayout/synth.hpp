#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/hypgen.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/render.hpp"

namespace roomlayout {

/// Rough LSUN type frequencies for ids 1..11; types 5 and 6 dominate.
std::vector<double> lsun_like_weights();

struct SynthConfig {
  std::uint64_t seed = 0;
  int frame_w = kDefaultFrameSize;
  std::vector<double> type_weights = lsun_like_weights();  // ids 1..11
  double noise_sigma = 0.05;
  int occluder_count = 3;
  double occluder_max_frac = 0.2;
  double edge_dropout_frac = 0.1;

  void check() const;
};

struct Scene {
  Layout layout;
  VanishingTriple vps;
};

struct SceneMaps {
  HeatMap edges;
  SegMap seg;
};

/// Ground-truth layout built from its own vanishing points. Deterministic in
/// cfg.seed; throws kGenerationFailure after 100 rejected draws.
Scene sample_scene(const SynthConfig& cfg);
/// Same as sample_scene with the type fixed.
Scene sample_scene_of_type(const SynthConfig& cfg, int type);

SceneMaps clean_maps(const Layout& l, const RenderConfig& rcfg = {});

/// Closed pixel rectangle, 0-based indices.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;
};

void zero_rects(HeatMap& E, const std::vector<PixelRect>& rects);
void relabel_rects(SegMap& M, const std::vector<PixelRect>& rects,
                   const std::vector<SurfaceLabel>& labels);

/// Gaussian noise, occluders that blank the edge map, dropout patches on
/// strong edges and wall relabelling of the segmentation. Deterministic in
/// cfg.seed.
SceneMaps corrupt_maps(const HeatMap& E, const SegMap& M, const SynthConfig& cfg);

/// n ground-truth layouts, seeds cfg.seed, cfg.seed + 1, ...
LayoutPool build_pool(int n, const SynthConfig& cfg);

/// Scales every layout to a frame_w square and clamps interior corners to
/// [1, frame_w]. Invalid results are skipped.
LayoutPool ingest_layouts(const std::vector<Layout>& layouts, int frame_w);

/// Moves each corner by `px` pixels: interior corners in a random
/// direction, border corners along their edge. Retries until valid; returns
/// the input when no valid perturbation is found.
Layout perturb_layout(const Layout& l, double px, std::mt19937_64& rng);

}  // namespace roomlayout

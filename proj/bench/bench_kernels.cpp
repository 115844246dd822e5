// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "roomlayout/hypgen.hpp"
#include "roomlayout/refine.hpp"
#include "roomlayout/render.hpp"
#include "roomlayout/score.hpp"
#include "roomlayout/synth.hpp"

using namespace roomlayout;

namespace {

struct Fixture {
  Scene scene;
  SceneMaps maps;
  LayoutPool pool;
  std::vector<ScoredLayout> hypotheses;

  Fixture() {
    SynthConfig c;
    c.seed = 11;
    scene = sample_scene(c);
    const SceneMaps clean = clean_maps(scene.layout);
    maps = corrupt_maps(clean.edges, clean.seg, c);
    pool = build_pool(4000, c);
    const LayoutScorer scorer(maps.seg, maps.edges);
    hypotheses = combine_hypotheses(generate_ray_hypotheses(scorer, scene.vps, {}),
                                    generate_pool_hypotheses(scorer, pool, 2));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_ScoreBatch(benchmark::State& state) {
  const Fixture& f = fixture();
  const LayoutScorer scorer(f.maps.seg, f.maps.edges);
  for (auto _ : state) benchmark::DoNotOptimize(scorer.score_batch(f.pool.entries));
  state.SetItemsProcessed(state.iterations() * f.pool.entries.size());
}

void BM_ScoreBatchSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  const LayoutScorer scorer(f.maps.seg, f.maps.edges);
  for (auto _ : state) benchmark::DoNotOptimize(scorer.score_batch_serial(f.pool.entries));
  state.SetItemsProcessed(state.iterations() * f.pool.entries.size());
}

void BM_Optimize(benchmark::State& state) {
  const Fixture& f = fixture();
  const LayoutScorer scorer(f.maps.seg, f.maps.edges);
  for (auto _ : state) benchmark::DoNotOptimize(optimize(f.hypotheses, scorer));
}

void BM_OptimizeSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  const LayoutScorer scorer(f.maps.seg, f.maps.edges);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_serial(f.hypotheses, scorer));
}

void BM_GaussianBlur(benchmark::State& state) {
  const HeatMap mask = stroke_mask(fixture().scene.layout, 6);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_blur(mask, 6.0));
}

void BM_RenderEdges(benchmark::State& state) {
  Renderer r;
  HeatMap out;
  for (auto _ : state) {
    r.render_edges(fixture().scene.layout, out);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_ScoreBatch)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreBatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Optimize)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimizeSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GaussianBlur)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RenderEdges)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

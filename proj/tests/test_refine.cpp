#include <gtest/gtest.h>

#include "roomlayout/refine.hpp"
#include "roomlayout/synth.hpp"
#include "support.hpp"

using namespace roomlayout;

namespace {

// Ground truth snapped to the pixel grid so refinement can reach it exactly.
Layout integer_scene(int type, std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  const Layout l = round_layout(sample_scene_of_type(c, type).layout);
  EXPECT_TRUE(validate(l));
  return l;
}

int first_interior(const Layout& l) {
  for (int k = 0; k < l.topology().corner_count; ++k) {
    if (!l.topology().is_border(k)) return k;
  }
  return -1;
}

}  // namespace

TEST(NeighborSet, Examples) {
  const Frame f{224, 224};
  const NeighborSet a = neighbor_set({100, 100}, CornerKind::kInterior, f);
  EXPECT_EQ(a.center, (Point{100, 100}));
  EXPECT_EQ(a.candidates,
            (std::vector<Point>{{100, 100}, {100, 99}, {100, 101}, {99, 100}, {101, 100}}));
  const NeighborSet b = neighbor_set({50, 1}, CornerKind::kBorder, f);
  EXPECT_EQ(b.candidates, (std::vector<Point>{{50, 1}, {49, 1}, {51, 1}}));
  const NeighborSet c = neighbor_set({1, 1}, CornerKind::kBorder, f);
  EXPECT_EQ(c.candidates.size(), 3u);
  for (const Point& p : c.candidates) {
    EXPECT_GE(p.x, 1);
    EXPECT_GE(p.y, 1);
  }
  const NeighborSet d = neighbor_set({224, 120}, CornerKind::kBorder, f);
  EXPECT_EQ(d.candidates, (std::vector<Point>{{224, 120}, {224, 119}, {224, 121}}));
  const NeighborSet e = neighbor_set({1, 5}, CornerKind::kInterior, f);
  EXPECT_EQ(e.candidates.size(), 4u);
}

TEST(NeighborSet, FromLayoutRoles) {
  const Layout l = integer_scene(5, 3);
  for (int k = 0; k < 4; ++k) {
    const NeighborSet ns = neighbor_set(l, k);
    EXPECT_EQ(ns.candidates.front(), l.points[k]);
    EXPECT_LE(ns.candidates.size(), l.topology().is_border(k) ? 3u : 5u);
  }
}

TEST(RoundLayout, RoundsAndClamps) {
  const Layout l{11, {{50.4, 0.5}, {60.6, 224.5}}, Frame{224, 224}};
  const Layout r = round_layout(l);
  EXPECT_EQ(r.points[0], (Point{50, 1}));
  EXPECT_EQ(r.points[1], (Point{61, 224}));
}

TEST(Refine, LocalMaximumUnchanged) {
  for (int type : {1, 5, 6, 11}) {
    const Layout gt = integer_scene(type, 7);
    const SceneMaps m = clean_maps(gt);
    const LayoutScorer scorer(m.seg, m.edges);
    RefineTrace trace;
    const ScoredLayout r = refine_layout(gt, scorer, &trace);
    EXPECT_EQ(r.layout, gt);
    EXPECT_EQ(r.score, 1.0);
    EXPECT_EQ(trace.accepted_scores.size(), 1u);
  }
}

TEST(Refine, RecoversPerturbedCorner) {
  for (int type : {1, 2, 4, 5, 6}) {
    const Layout gt = integer_scene(type, 13);
    const SceneMaps m = clean_maps(gt);
    const LayoutScorer scorer(m.seg, m.edges);
    const int k = first_interior(gt);
    ASSERT_GE(k, 0);

    // Exhaustive oracle over a +-3 px window: the GT corner is the unique max.
    int maxima = 0;
    for (int dy = -3; dy <= 3; ++dy) {
      for (int dx = -3; dx <= 3; ++dx) {
        Layout c = gt;
        c.points[k].x += dx;
        c.points[k].y += dy;
        if (!validate(c)) continue;
        const double s = scorer.score(c).score;
        if (dx == 0 && dy == 0) {
          EXPECT_EQ(s, 1.0);
        } else {
          EXPECT_LT(s, 1.0);
        }
        maxima += s == 1.0;
      }
    }
    EXPECT_EQ(maxima, 1);

    Layout start = gt;
    start.points[k].x += 2;
    ASSERT_TRUE(validate(start));
    const ScoredLayout r = refine_layout(start, scorer);
    EXPECT_EQ(r.layout.points[k], gt.points[k]) << "type " << type;
    EXPECT_EQ(r.layout, gt);
  }
}

TEST(Refine, LambdaZeroSelfConsistent) {
  const Layout gt = integer_scene(6, 17);
  const SceneMaps m = clean_maps(gt);
  ScoreConfig cfg;
  cfg.lambda = 0;
  const LayoutScorer scorer(m.seg, m.edges, cfg);
  std::mt19937_64 rng(3);
  const Layout start = perturb_layout(gt, 3, rng);
  RefineTrace trace;
  const ScoredLayout r = refine_layout(start, scorer, &trace);
  for (std::size_t i = 1; i < trace.accepted_scores.size(); ++i) {
    EXPECT_GT(trace.accepted_scores[i], trace.accepted_scores[i - 1]);
  }
  EXPECT_EQ(r.s1, 1.0);
}

TEST(Refine, MonotoneTerminatingIdempotent) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 40; ++rep) {
    SynthConfig c;
    c.seed = 300 + rep;
    const Scene s = sample_scene(c);
    const SceneMaps clean = clean_maps(s.layout);
    const SceneMaps noisy = corrupt_maps(clean.edges, clean.seg, c);
    const LayoutScorer scorer(noisy.seg, noisy.edges);
    const Layout start = perturb_layout(s.layout, 4, rng);

    RefineTrace trace;
    const ScoredLayout r = refine_layout(start, scorer, &trace);
    ASSERT_FALSE(trace.accepted_scores.empty());
    for (std::size_t i = 1; i < trace.accepted_scores.size(); ++i) {
      ASSERT_GT(trace.accepted_scores[i], trace.accepted_scores[i - 1]);
    }
    EXPECT_LE(trace.sweeps, 224 * std::max<int>(1, s.layout.points.size()));
    EXPECT_TRUE(validate(r.layout));
    EXPECT_EQ(r.layout.type, start.type);
    EXPECT_GE(r.score, scorer.score(start).score);
    EXPECT_EQ(r.score, scorer.score(r.layout).score);

    const ScoredLayout again = refine_layout(r.layout, scorer);
    EXPECT_EQ(again.layout, r.layout);
    EXPECT_EQ(again.score, r.score);
  }
}

TEST(Refine, InvalidRoundingReturnsInput) {
  // Two boundaries 0.4 px apart collapse onto one pixel column when rounded.
  const Layout l{8, {{100.3, 0.5}, {100.7, 0.5}, {100.7, 224.5}, {100.3, 224.5}},
                 Frame{224, 224}};
  if (!validate(l)) GTEST_SKIP() << "layout rejected by minimum face size";
  const SceneMaps m = clean_maps(l);
  const LayoutScorer scorer(m.seg, m.edges);
  const ScoredLayout r = refine_layout(l, scorer);
  EXPECT_EQ(r.layout, l);
}

TEST(Optimize, Examples) {
  const Layout gt = integer_scene(5, 23);
  const SceneMaps m = clean_maps(gt);
  const LayoutScorer scorer(m.seg, m.edges);

  const ScoredLayout gt_scored = scorer.score(gt);
  std::mt19937_64 rng(4);
  const Layout off = perturb_layout(gt, 2, rng);
  const OptimizeResult single = optimize({scorer.score(off)}, scorer);
  EXPECT_EQ(single.best.layout, refine_layout(off, scorer).layout);

  SynthConfig c;
  c.seed = 24;
  const Layout bad = sample_scene_of_type(c, 1).layout;
  const OptimizeResult two = optimize({scorer.score(bad), gt_scored}, scorer);
  EXPECT_EQ(two.best.layout, gt);
  EXPECT_EQ(two.best.score, 1.0);
  EXPECT_EQ(two.best_index, 1u);
  ASSERT_EQ(two.refined.size(), 2u);

  std::vector<ScoredLayout> variants;
  for (int i = 0; i < 4; ++i) variants.push_back(scorer.score(perturb_layout(gt, 3, rng)));
  const OptimizeResult four = optimize(variants, scorer);
  for (std::size_t k = 0; k < gt.points.size(); ++k) {
    EXPECT_LE(distance(four.best.layout.points[k], gt.points[k]), 1.0);
  }

  try {
    optimize({}, scorer);
    FAIL();
  } catch (const LayoutError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyHypotheses);
  }
}

TEST(Optimize, ParallelMatchesSerialAndTiesPreferEarliest) {
  SynthConfig c;
  c.seed = 44;
  const Scene s = sample_scene(c);
  const SceneMaps clean = clean_maps(s.layout);
  const SceneMaps noisy = corrupt_maps(clean.edges, clean.seg, c);
  const LayoutScorer scorer(noisy.seg, noisy.edges);
  std::mt19937_64 rng(5);
  std::vector<ScoredLayout> hyps;
  for (int i = 0; i < 6; ++i) hyps.push_back(scorer.score(perturb_layout(s.layout, 5, rng)));
  hyps.push_back(hyps[2]);
  const OptimizeResult a = optimize(hyps, scorer);
  const OptimizeResult b = optimize_serial(hyps, scorer);
  EXPECT_EQ(a.best.layout, b.best.layout);
  EXPECT_EQ(a.best_index, b.best_index);
  ASSERT_EQ(a.refined.size(), b.refined.size());
  for (std::size_t i = 0; i < a.refined.size(); ++i) EXPECT_EQ(a.refined[i].score, b.refined[i].score);
  EXPECT_NE(a.best_index, 6u);
}

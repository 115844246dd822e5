#include <gtest/gtest.h>

#include <numeric>

#include "roomlayout/metrics.hpp"
#include "roomlayout/synth.hpp"
#include "support.hpp"

using namespace roomlayout;

namespace {

// Minimum-cost injection of the smaller set into the larger by trying every
// ordering of the larger set; unmatched corners cost one diagonal.
double corner_oracle(const std::vector<Point>& a, const std::vector<Point>& b, double diag) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  if (large.empty()) return 0.0;
  std::vector<int> idx(large.size());
  std::iota(idx.begin(), idx.end(), 0);
  double best = 1e300;
  do {
    double s = 0;
    for (std::size_t k = 0; k < small.size(); ++k) s += distance(small[k], large[idx[k]]);
    s += diag * double(large.size() - small.size());
    best = std::min(best, s);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return 100.0 * best / diag / double(large.size());
}

}  // namespace

TEST(PixelError, Examples) {
  SynthConfig c;
  c.seed = 2;
  const Layout l = sample_scene(c).layout;
  EXPECT_EQ(pixel_error(l, render_seg(l)), 0.0);

  SegMap gt(8, 8, SurfaceLabel::kCeiling);
  SegMap pred(8, 8, SurfaceLabel::kCeiling);
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) {
      gt.at(i, j) = i < 4 ? 1 : 2;
      pred.at(i, j) = j < 4 ? 1 : 2;
    }
  }
  // Quadrants agree on exactly half the pixels; brute force confirms no
  // admissible matching does better.
  EXPECT_DOUBLE_EQ(100.0 * (1.0 - oracle::matched_accuracy(pred, gt, true)), 50.0);
  EXPECT_DOUBLE_EQ(pixel_error(pred, gt), 50.0);

  EXPECT_EQ(pixel_error(SegMap(5, 5, SurfaceLabel::kFrontWall),
                        SegMap(5, 5, SurfaceLabel::kLeftWall)),
            0.0);
  EXPECT_THROW(pixel_error(SegMap(5, 5), SegMap(5, 4)), LayoutError);
}

TEST(PixelError, ZeroForEveryValidLayout) {
  for (const Scene& s : oracle::scenes_of_all_types(2, 5)) {
    EXPECT_EQ(pixel_error(s.layout, render_seg(s.layout)), 0.0);
  }
}

TEST(CornerError, Examples) {
  SynthConfig c;
  c.seed = 3;
  const Layout gt = sample_scene_of_type(c, 1).layout;
  EXPECT_EQ(corner_error(gt, gt, 224, 224), 0.0);

  // One corner off by the full diagonal.
  Layout far = gt;
  const double diag = std::hypot(224.0, 224.0);
  far.points[2].x += diag;
  EXPECT_NEAR(corner_error(far, gt, 224, 224), 100.0 / 8, 1e-9);
}

TEST(CornerError, SameTypeMatchesDirectSum) {
  std::mt19937_64 rng(7);
  for (int t = 1; t <= 11; ++t) {
    SynthConfig c;
    c.seed = 50 + t;
    const Layout a = sample_scene_of_type(c, t).layout;
    const Layout b = perturb_layout(a, 6, rng);
    const double diag = std::hypot(320.0, 240.0);
    const Layout sa = scale_layout(a, 320, 240), sb = scale_layout(b, 320, 240);
    double s = 0;
    for (std::size_t k = 0; k < sa.points.size(); ++k) s += distance(sa.points[k], sb.points[k]);
    const double expect = 100.0 * s / diag / sa.points.size();
    EXPECT_NEAR(corner_error(sa, sb, 320, 240), expect, 1e-12);
    EXPECT_NEAR(corner_error(sb, sa, 320, 240), corner_error(sa, sb, 320, 240), 1e-12);
  }
}

TEST(CornerError, CrossTypeMatchesAssignmentBruteForce) {
  const auto scenes = oracle::scenes_of_all_types(1, 60);
  const double diag = std::hypot(224.0, 224.0);
  for (const Scene& a : scenes) {
    for (const Scene& b : scenes) {
      if (a.layout.type == b.layout.type) continue;
      EXPECT_NEAR(corner_error(a.layout, b.layout, 224, 224),
                  corner_oracle(a.layout.points, b.layout.points, diag), 1e-9)
          << a.layout.type << " vs " << b.layout.type;
    }
  }
  const Layout empty{kSingleWallType, {}, Frame{224, 224}};
  EXPECT_NEAR(corner_error(empty, scenes[0].layout, 224, 224), 100.0, 1e-12);
  EXPECT_EQ(corner_error(empty, empty, 224, 224), 0.0);
}

TEST(TypeAccuracy, Examples) {
  auto recs = [](std::vector<bool> ok) {
    std::vector<EvalRecord> r;
    for (bool b : ok) r.push_back(EvalRecord{0, 0, b, 0, 0});
    return r;
  };
  EXPECT_DOUBLE_EQ(type_accuracy(recs({true, true})), 100.0);
  EXPECT_DOUBLE_EQ(type_accuracy(recs({true, false})), 50.0);
  EXPECT_DOUBLE_EQ(type_accuracy(recs({true, true, false, true})), 75.0);
  EXPECT_THROW(type_accuracy({}), LayoutError);
}

TEST(EdgeError, Examples) {
  std::mt19937_64 rng(8);
  const HeatMap a = oracle::random_heat(12, 12, rng);
  EXPECT_EQ(edge_error(a, a), 0.0);
  EXPECT_DOUBLE_EQ(edge_error(HeatMap(2, 2, 0.0), HeatMap(2, 2, 1.0)), 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const HeatMap x = oracle::random_heat(9, 7, rng);
    const HeatMap y = oracle::random_heat(9, 7, rng);
    EXPECT_NEAR(edge_error(x, y), oracle::frobenius(x, y), 1e-12);
    EXPECT_GE(edge_error(x, y), 0.0);
  }
}

TEST(SemanticError, Examples) {
  std::mt19937_64 rng(9);
  const SegMap a = oracle::random_seg(6, 6, rng);
  EXPECT_EQ(semantic_error(a, a), 0.0);
  SegMap permuted = a;
  const std::uint8_t swap_walls[] = {0, 1, 2, 5, 3, 4};  // 3->5, 4->3, 5->4
  for (auto& v : permuted.labels()) v = swap_walls[v];
  EXPECT_EQ(semantic_error(permuted, a), 0.0);
  for (int rep = 0; rep < 100; ++rep) {
    const SegMap x = oracle::random_seg(6, 6, rng);
    const SegMap y = oracle::random_seg(6, 6, rng);
    const double e = semantic_error(x, y);
    EXPECT_DOUBLE_EQ(e, 100.0 * (1.0 - oracle::matched_accuracy(x, y, true)));
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 100.0);
  }
  // Zero only for admissible relabellings: swapping ceiling and floor counts.
  SegMap cf = a;
  for (auto& v : cf.labels()) v = v == 1 ? 2 : v == 2 ? 1 : v;
  if (cf != a) {
    EXPECT_GT(semantic_error(cf, a), 0.0);
  }
}

TEST(MeanRecord, ColumnMeans) {
  const std::vector<EvalRecord> r{{1, 2, true, 3, 4}, {3, 4, false, 5, 6}, {5, 0, true, 1, 2}};
  const EvalRecord m = mean_record(r);
  EXPECT_DOUBLE_EQ(m.pixel_error_pct, 3.0);
  EXPECT_DOUBLE_EQ(m.corner_error_pct, 2.0);
  EXPECT_DOUBLE_EQ(m.edge_error, 3.0);
  EXPECT_DOUBLE_EQ(m.semantic_error_pct, 4.0);
  EXPECT_TRUE(m.type_correct);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "roomlayout/core.hpp"
#include "support.hpp"

using namespace roomlayout;

namespace {

Layout two_walls(double x, int w = 224) {
  return Layout{11, {{x, 0.5}, {x, w + 0.5}}, Frame{w, w}};
}

}  // namespace

TEST(LayoutTypes, CornerCountsFollowLsunTable) {
  const int expected[] = {8, 6, 6, 4, 4, 6, 4, 4, 2, 2, 2};
  for (int id = 1; id <= 11; ++id) {
    EXPECT_EQ(layout_type(id).corner_count, expected[id - 1]) << "type " << id;
    EXPECT_EQ(layout_type(id).lsun_index(), id - 1);
  }
  EXPECT_EQ(layout_type(kSingleWallType).corner_count, 0);
  EXPECT_FALSE(is_known_type(0));
  EXPECT_FALSE(is_known_type(13));
  EXPECT_THROW(layout_type(0), LayoutError);
}

TEST(LayoutTypes, RolesConsistentWithVisibleFaces) {
  for (const LayoutType& t : all_layout_types()) {
    ASSERT_FALSE(t.visible_faces.empty());
    EXPECT_EQ(static_cast<int>(t.corner_roles.size()), t.corner_count);
    const std::set<SurfaceLabel> vis(t.visible_faces.begin(), t.visible_faces.end());
    for (const CornerRole& r : t.corner_roles) {
      for (SurfaceLabel f : r.faces) EXPECT_TRUE(vis.count(f)) << "type " << t.id;
    }
  }
}

TEST(FacesOf, PartitionForEveryType) {
  for (const Scene& s : oracle::scenes_of_all_types(4)) {
    const Layout& l = s.layout;
    const auto faces = faces_of(l);
    double total = 0;
    std::set<SurfaceLabel> seen;
    const auto& vis = l.topology().visible_faces;
    for (const FacePolygon& f : faces) {
      total += oracle::polygon_area(f.polygon);
      EXPECT_TRUE(seen.insert(f.label).second) << "label repeated, type " << l.type;
      EXPECT_NE(std::find(vis.begin(), vis.end(), f.label), vis.end());
      EXPECT_TRUE(is_simple_polygon(f.polygon));
    }
    EXPECT_NEAR(total, l.frame.area(), 1e-6 * l.frame.area()) << "type " << l.type;

    // Interiors are disjoint: a point strictly inside one face is in no other.
    for (int j = 1; j <= l.frame.height; j += 7) {
      for (int i = 1; i <= l.frame.width; i += 7) {
        const Point p{double(i), double(j)};
        int inside = 0;
        for (const FacePolygon& f : faces) {
          bool near = false;
          for (std::size_t k = 0; k < f.polygon.size(); ++k) {
            near |= oracle::seg_distance(p, f.polygon[k],
                                         f.polygon[(k + 1) % f.polygon.size()]) < 1e-6;
          }
          if (!near && oracle::contains(f.polygon, p)) ++inside;
        }
        EXPECT_LE(inside, 1);
      }
    }
  }
}

TEST(FacesOf, FullBoxHasFiveFaces) {
  SynthConfig c;
  c.seed = 3;
  const Layout l = sample_scene_of_type(c, 1).layout;
  const auto faces = faces_of(l);
  EXPECT_EQ(faces.size(), 5u);
  double total = 0;
  for (const auto& f : faces) total += oracle::polygon_area(f.polygon);
  EXPECT_NEAR(total, 224.0 * 224.0, 1e-6);
}

TEST(FacesOf, TwoWallsSplitAtCenter) {
  const auto faces = faces_of(two_walls(112.5));
  ASSERT_EQ(faces.size(), 2u);
  EXPECT_EQ(faces[0].label, SurfaceLabel::kLeftWall);
  EXPECT_EQ(faces[1].label, SurfaceLabel::kRightWall);
  EXPECT_NEAR(oracle::polygon_area(faces[0].polygon), 112.0 * 224.0, 1e-9);
}

TEST(FacesOf, SingleWallIsWholeFrame) {
  const Layout l{kSingleWallType, {}, Frame{224, 224}};
  const auto faces = faces_of(l);
  ASSERT_EQ(faces.size(), 1u);
  EXPECT_EQ(faces[0].label, SurfaceLabel::kFrontWall);
  EXPECT_NEAR(oracle::polygon_area(faces[0].polygon), 224.0 * 224.0, 1e-9);
}

TEST(FacesOf, SelfIntersectingOrderThrows) {
  SynthConfig c;
  c.seed = 3;
  Layout l = sample_scene_of_type(c, 1).layout;
  std::swap(l.points[0], l.points[2]);
  try {
    faces_of(l);
    FAIL() << "expected InvalidTopology";
  } catch (const LayoutError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTopology);
  }
  EXPECT_FALSE(validate(l));
}

TEST(Validate, Examples) {
  SynthConfig c;
  c.seed = 11;
  const Layout gt = sample_scene(c).layout;
  EXPECT_TRUE(validate(gt));

  Layout short_l = gt;
  short_l.points.pop_back();
  EXPECT_FALSE(validate(short_l));

  Layout off = sample_scene_of_type(c, 1).layout;
  off.points[0].x = -5;
  EXPECT_FALSE(validate(off));

  Layout unknown = gt;
  unknown.type = 42;
  EXPECT_FALSE(validate(unknown));

  Layout nan_l = gt;
  nan_l.points[0].x = std::nan("");
  EXPECT_FALSE(validate(nan_l));

  // A border corner must sit within 0.5 px of the frame edge.
  Layout lifted = two_walls(100);
  lifted.points[0].y = 2.0;
  EXPECT_FALSE(validate(lifted));
  lifted.points[0].y = 1.0;
  EXPECT_TRUE(validate(lifted));
}

TEST(ScaleLayout, Examples) {
  // Corner 0 of type 5 is interior, so it scales linearly.
  const Layout a{5, {{112, 112}, {140, 0.5}, {224.5, 200}, {0.5, 180}}, Frame{224, 224}};
  const Layout sa = scale_layout(a, 448, 336);
  EXPECT_DOUBLE_EQ(sa.points[0].x, 224);
  EXPECT_DOUBLE_EQ(sa.points[0].y, 168);
  EXPECT_EQ(sa.frame, (Frame{448, 336}));
  EXPECT_EQ(sa.type, 5);
  Layout b = a;
  b.points[0] = {1, 224};
  const Layout sb = scale_layout(b, 448, 336);
  EXPECT_DOUBLE_EQ(sb.points[0].x, 2);
  EXPECT_DOUBLE_EQ(sb.points[0].y, 336);
  EXPECT_EQ(scale_layout(a, 224, 224), a);
  EXPECT_EQ(scale_layout(Layout{12, {}, Frame{224, 224}}, 10, 10).type, 12);
  try {
    scale_layout(a, 0, 10);
    FAIL();
  } catch (const LayoutError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTarget);
  }
}

TEST(ScaleLayout, BorderCornersStayOnTheirEdge) {
  const Layout a{5, {{112, 112}, {140, 0.5}, {224.5, 200}, {0.5, 180}}, Frame{224, 224}};
  const Layout s = scale_layout(a, 640, 480);
  EXPECT_DOUBLE_EQ(s.points[1].x, 400);
  EXPECT_DOUBLE_EQ(s.points[1].y, 0.5);
  EXPECT_DOUBLE_EQ(s.points[2].x, 640.5);
  EXPECT_DOUBLE_EQ(s.points[3].x, 0.5);
  EXPECT_TRUE(validate(s));
}

TEST(ScaleLayout, RoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dim(1, 2000);
  for (const Scene& s : oracle::scenes_of_all_types(2)) {
    const int W = dim(rng), H = dim(rng);
    const Layout back = scale_layout(scale_layout(s.layout, W, H), 224, 224);
    ASSERT_EQ(back.points.size(), s.layout.points.size());
    for (std::size_t k = 0; k < back.points.size(); ++k) {
      EXPECT_NEAR(back.points[k].x, s.layout.points[k].x, 1e-9);
      EXPECT_NEAR(back.points[k].y, s.layout.points[k].y, 1e-9);
    }
  }
}

TEST(Border, ProjectionAndDistance) {
  const Frame f{224, 224};
  EXPECT_DOUBLE_EQ(border_distance({112, 112}, f), 111.5);
  EXPECT_LT(border_distance({-3, 50}, f), 0);
  const Point c = project_to_border({0.8, 0.9}, f);
  EXPECT_EQ(c, (Point{0.5, 0.5}));
  const Point e = project_to_border({50, 1.0}, f);
  EXPECT_EQ(e, (Point{50, 0.5}));
  EXPECT_DOUBLE_EQ(perimeter_position({0.5, 0.5}, f), 0.0);
  EXPECT_DOUBLE_EQ(perimeter_position({224.5, 10.5}, f), 234.0);
}

TEST(Labels, WallSubset) {
  int walls = 0;
  for (int i = 0; i < kNumLabels; ++i) walls += is_wall(label_from_index(i));
  EXPECT_EQ(walls, 3);
  EXPECT_EQ(label_name(SurfaceLabel::kCeiling), "ceiling");
}

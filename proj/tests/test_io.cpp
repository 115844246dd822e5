#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "roomlayout/io.hpp"
#include "roomlayout/synth.hpp"

using namespace roomlayout;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "roomlayout_test_io";
  fs::create_directories(d);
  return d / name;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const LayoutError& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(LayoutJson, RoundTripIsExact) {
  SynthConfig c;
  c.seed = 3;
  const Layout l = sample_scene(c).layout;
  EXPECT_EQ(layout_from_json(layout_to_json(l)), l);
  const fs::path p = temp_path("l.json");
  write_layout(p, l);
  EXPECT_EQ(read_layout(p), l);
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(LayoutJson, Format) {
  const Layout l = layout_from_json(R"({"type": 11, "points": [[10, 0.5], [12, 224.5]], "frame": [224, 224]})");
  EXPECT_EQ(l.type, 11);
  EXPECT_EQ(l.points[1], (Point{12, 224.5}));
  EXPECT_EQ(l.frame, (Frame{224, 224}));
}

TEST(LayoutJson, Malformed) {
  for (const char* text : {"", "{", "[]", R"({"points": []})", R"({"type": 1})",
                           R"({"type": "x", "points": []})",
                           R"({"type": 1, "points": [[1]]})",
                           R"({"type": 1, "points": [], "frame": [0, 3]})"}) {
    EXPECT_EQ(code_of([&] { layout_from_json(text); }), ErrorCode::kParseError) << text;
  }
  EXPECT_EQ(code_of([&] { read_layout(temp_path("nope.json")); }), ErrorCode::kParseError);
}

TEST(PoolJson, RoundTripAndFrameCheck) {
  SynthConfig c;
  const LayoutPool pool = build_pool(20, c);
  const fs::path p = temp_path("pool.json");
  write_pool(p, pool);
  const LayoutPool r = read_pool(p);
  EXPECT_EQ(r.frame, pool.frame);
  EXPECT_EQ(r.entries, pool.entries);

  write_text(p, R"([{"type": 11, "points": [[10, 0.5], [10, 224.5]], "frame": [224, 224]},
                    {"type": 11, "points": [[10, 0.5], [10, 100.5]], "frame": [100, 100]}])");
  EXPECT_EQ(code_of([&] { read_pool(p); }), ErrorCode::kParseError);
}

TEST(VpJson, RoundTrip) {
  const VanishingTriple v{{112, -3000.25}, {5000, 100}, {110, 120}};
  const fs::path p = temp_path("vps.json");
  write_vps(p, v);
  const VanishingTriple r = read_vps(p);
  EXPECT_EQ(r.vp1, v.vp1);
  EXPECT_EQ(r.vp2, v.vp2);
  EXPECT_EQ(r.vp3, v.vp3);
  write_text(p, R"({"vp1": [1, 2], "vp2": [3, 4]})");
  EXPECT_EQ(code_of([&] { read_vps(p); }), ErrorCode::kParseError);
}

TEST(Annotations, ZeroBasedTypesAndWrapper) {
  const fs::path p = temp_path("ann.json");
  write_text(p, R"({"layouts": [
      {"type": 10, "points": [[300, 0.5], [310, 480.5]], "frame": [640, 480]},
      {"type": 0, "points": [[1,1],[2,2],[3,3],[4,4],[5,5],[6,6],[7,7],[8,8]], "frame": [640, 480]}]})");
  const auto ls = read_annotations(p, true);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].type, 11);
  EXPECT_EQ(ls[1].type, 1);
  // Type 0 is not a 1-based id.
  EXPECT_EQ(code_of([&] { read_annotations(p, false); }), ErrorCode::kParseError);

  write_text(p, R"([{"type": 11, "points": [[1, 1], [1, 2]]}])");
  EXPECT_EQ(code_of([&] { read_annotations(p, true); }), ErrorCode::kParseError);
  write_text(p, R"([{"type": 12, "points": [], "frame": [10, 10]}])");
  EXPECT_EQ(code_of([&] { read_annotations(p, false); }), ErrorCode::kParseError);
  write_text(p, "not json");
  EXPECT_EQ(code_of([&] { read_annotations(p, false); }), ErrorCode::kParseError);
}

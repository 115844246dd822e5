#include "roomlayout/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace roomlayout {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw LayoutError(ErrorCode::kParseError, what);
}

Point point_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(where + ": a point must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json layout_json(const Layout& l) {
  json pts = json::array();
  for (const Point& p : l.points) pts.push_back(point_json(p));
  return {{"type", l.type}, {"points", pts}, {"frame", {l.frame.width, l.frame.height}}};
}

Layout layout_from(const json& j, const std::string& where, int type_offset = 0) {
  if (!j.is_object()) parse_fail(where + ": a layout must be a JSON object");
  if (!j.contains("type") || !j["type"].is_number_integer()) {
    parse_fail(where + ": layout needs an integer \"type\"");
  }
  if (!j.contains("points") || !j["points"].is_array()) {
    parse_fail(where + ": layout needs a \"points\" array");
  }
  Layout l;
  l.type = j["type"].get<int>() + type_offset;
  for (const json& p : j["points"]) l.points.push_back(point_from(p, where));
  if (j.contains("frame")) {
    const json& f = j["frame"];
    if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
        !f[1].is_number_integer()) {
      parse_fail(where + ": \"frame\" must be [w, h]");
    }
    l.frame = Frame{f[0].get<int>(), f[1].get<int>()};
    if (l.frame.width < 1 || l.frame.height < 1) {
      parse_fail(where + ": frame must be positive");
    }
  }
  return l;
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(where + ": " + e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw LayoutError(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
    }
    out << data;
    out.flush();
    if (!out) {
      throw LayoutError(ErrorCode::kInvalidArgument, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw LayoutError(ErrorCode::kInvalidArgument, "cannot rename onto " + path.string());
  }
}

std::string layout_to_json(const Layout& l) { return layout_json(l).dump(); }

Layout layout_from_json(const std::string& text) {
  return layout_from(parse_json(text, "layout"), "layout");
}

Layout read_layout(const std::filesystem::path& path) {
  return layout_from(parse_json(read_file(path), path.string()), path.string());
}

void write_layout(const std::filesystem::path& path, const Layout& l) {
  write_file_atomic(path, layout_json(l).dump(2) + "\n");
}

LayoutPool read_pool(const std::filesystem::path& path) {
  const json j = parse_json(read_file(path), path.string());
  if (!j.is_array()) parse_fail(path.string() + ": pool must be a JSON array");
  LayoutPool pool;
  bool first = true;
  for (const json& e : j) {
    Layout l = layout_from(e, path.string());
    if (first) {
      pool.frame = l.frame;
      first = false;
    } else if (!(l.frame == pool.frame)) {
      parse_fail(path.string() + ": pool entries use different frames");
    }
    pool.entries.push_back(std::move(l));
  }
  return pool;
}

void write_pool(const std::filesystem::path& path, const LayoutPool& pool) {
  json j = json::array();
  for (const Layout& l : pool.entries) j.push_back(layout_json(l));
  write_file_atomic(path, j.dump() + "\n");
}

VanishingTriple read_vps(const std::filesystem::path& path) {
  const json j = parse_json(read_file(path), path.string());
  if (!j.is_object() || !j.contains("vp1") || !j.contains("vp2") || !j.contains("vp3")) {
    parse_fail(path.string() + ": expected vp1, vp2 and vp3");
  }
  const std::string where = path.string();
  return {point_from(j["vp1"], where), point_from(j["vp2"], where),
          point_from(j["vp3"], where)};
}

void write_vps(const std::filesystem::path& path, const VanishingTriple& vps) {
  const json j = {{"vp1", point_json(vps.vp1)},
                  {"vp2", point_json(vps.vp2)},
                  {"vp3", point_json(vps.vp3)}};
  write_file_atomic(path, j.dump(2) + "\n");
}

std::vector<Layout> read_annotations(const std::filesystem::path& path,
                                     bool zero_based_types) {
  const json j = parse_json(read_file(path), path.string());
  const json* list = &j;
  if (j.is_object() && j.contains("layouts")) list = &j["layouts"];
  if (!list->is_array()) parse_fail(path.string() + ": expected an array of layouts");
  std::vector<Layout> out;
  for (const json& e : *list) {
    Layout l = layout_from(e, path.string(), zero_based_types ? 1 : 0);
    if (l.type < 1 || l.type > kNumLsunTypes) {
      parse_fail(path.string() + ": unknown layout type " + std::to_string(l.type));
    }
    if (!e.contains("frame")) parse_fail(path.string() + ": annotation needs \"frame\"");
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace roomlayout

#include "roomlayout/maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace roomlayout {

HeatMap::HeatMap(int width, int height, double fill)
    : width_(width), height_(height),
      values_(std::size_t(std::max(width, 0)) * std::max(height, 0), fill) {}

void HeatMap::clamp01() {
  for (double& v : values_) v = std::clamp(v, 0.0, 1.0);
}

SegMap::SegMap(int width, int height, SurfaceLabel fill)
    : width_(width), height_(height),
      labels_(std::size_t(std::max(width, 0)) * std::max(height, 0),
              static_cast<std::uint8_t>(fill)) {}

std::array<std::size_t, kNumLabels> SegMap::histogram() const {
  std::array<std::size_t, kNumLabels> h{};
  for (std::uint8_t v : labels_) {
    if (v >= 1 && v <= kNumLabels) ++h[v - 1];
  }
  return h;
}

namespace {

struct RawPgm {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             const std::string& why) {
  throw LayoutError(ErrorCode::kParseError, path.string() + ": " + why);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!tok.empty()) break;
    } else {
      tok.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  return tok;
}

RawPgm read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(path, "cannot open file");
  if (header_token(in) != "P5") parse_fail(path, "not a binary PGM (P5)");
  RawPgm raw;
  int maxval = 0;
  try {
    raw.width = std::stoi(header_token(in));
    raw.height = std::stoi(header_token(in));
    maxval = std::stoi(header_token(in));
  } catch (const std::exception&) {
    parse_fail(path, "malformed header");
  }
  if (raw.width < 1 || raw.height < 1) parse_fail(path, "empty image");
  if (maxval != 255) {
    parse_fail(path, "unsupported maxval " + std::to_string(maxval));
  }
  raw.pixels.resize(std::size_t(raw.width) * raw.height);
  in.read(reinterpret_cast<char*>(raw.pixels.data()),
          static_cast<std::streamsize>(raw.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.pixels.size())) {
    parse_fail(path, "truncated pixel data");
  }
  return raw;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw LayoutError(ErrorCode::kInvalidArgument,
                        "cannot write " + path.string());
    }
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out.flush()) {
      throw LayoutError(ErrorCode::kInvalidArgument,
                        "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw LayoutError(ErrorCode::kInvalidArgument,
                      "cannot rename onto " + path.string());
  }
}

}  // namespace

void write_heatmap_pgm(const std::filesystem::path& path, const HeatMap& m) {
  std::vector<std::uint8_t> px(m.size());
  for (std::size_t k = 0; k < px.size(); ++k) {
    const double v = std::clamp(m.values()[k], 0.0, 1.0);
    px[k] = static_cast<std::uint8_t>(std::lround(255.0 * v));
  }
  write_pgm(path, m.width(), m.height(), px);
}

HeatMap read_heatmap_pgm(const std::filesystem::path& path) {
  const RawPgm raw = read_pgm(path);
  HeatMap m(raw.width, raw.height);
  for (std::size_t k = 0; k < raw.pixels.size(); ++k) {
    m.values()[k] = raw.pixels[k] / 255.0;
  }
  return m;
}

void write_segmap_pgm(const std::filesystem::path& path, const SegMap& m) {
  write_pgm(path, m.width(), m.height(), m.labels());
}

SegMap read_segmap_pgm(const std::filesystem::path& path) {
  RawPgm raw = read_pgm(path);
  for (std::uint8_t v : raw.pixels) {
    if (v < 1 || v > kNumLabels) {
      parse_fail(path, "label value " + std::to_string(v) + " outside 1..5");
    }
  }
  SegMap m(raw.width, raw.height);
  m.labels() = std::move(raw.pixels);
  return m;
}

SemanticStack read_stack_pgm(const std::filesystem::path& path) {
  const HeatMap all = read_heatmap_pgm(path);
  if (all.height() % kNumLabels != 0) {
    parse_fail(path, "stack height is not a multiple of 5");
  }
  const int h = all.height() / kNumLabels;
  SemanticStack stack;
  for (int c = 0; c < kNumLabels; ++c) {
    HeatMap ch(all.width(), h);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < all.width(); ++i) ch.at(i, j) = all.at(i, c * h + j);
    }
    stack.channels[c] = std::move(ch);
  }
  return stack;
}

void write_stack_pgm(const std::filesystem::path& path,
                     const SemanticStack& stack) {
  const int w = stack.channels[0].width();
  const int h = stack.channels[0].height();
  HeatMap all(w, h * kNumLabels);
  for (int c = 0; c < kNumLabels; ++c) {
    if (stack.channels[c].width() != w || stack.channels[c].height() != h) {
      throw LayoutError(ErrorCode::kDimensionMismatch,
                        "stack channels differ in size");
    }
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) all.at(i, c * h + j) = stack.channels[c].at(i, j);
    }
  }
  write_heatmap_pgm(path, all);
}

SemanticStack read_stack_files(const std::string& prefix) {
  SemanticStack stack;
  for (int c = 0; c < kNumLabels; ++c) {
    stack.channels[c] =
        read_heatmap_pgm(prefix + "_" + std::to_string(c + 1) + ".pgm");
  }
  return stack;
}

namespace {

double cubic_weight(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return (((t - 5.0) * t + 8.0) * t - 4.0) * a;
  return 0.0;
}

}  // namespace

HeatMap resize_cubic(const HeatMap& m, int width, int height) {
  if (width < 1 || height < 1) {
    throw LayoutError(ErrorCode::kDegenerateTarget, "resize target is empty");
  }
  if (m.width() == width && m.height() == height) return m;
  const double sx = double(m.width()) / width;
  const double sy = double(m.height()) / height;
  // Horizontal then vertical pass.
  HeatMap tmp(width, m.height());
  for (int i = 0; i < width; ++i) {
    const double x = (i + 0.5) * sx - 0.5;
    const int x0 = static_cast<int>(std::floor(x));
    double w[4];
    for (int k = 0; k < 4; ++k) w[k] = cubic_weight(x - (x0 - 1 + k));
    for (int j = 0; j < m.height(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) {
        const int xi = std::clamp(x0 - 1 + k, 0, m.width() - 1);
        acc += w[k] * m.at(xi, j);
      }
      tmp.at(i, j) = acc;
    }
  }
  HeatMap out(width, height);
  for (int j = 0; j < height; ++j) {
    const double y = (j + 0.5) * sy - 0.5;
    const int y0 = static_cast<int>(std::floor(y));
    double w[4];
    for (int k = 0; k < 4; ++k) w[k] = cubic_weight(y - (y0 - 1 + k));
    for (int i = 0; i < width; ++i) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) {
        const int yi = std::clamp(y0 - 1 + k, 0, m.height() - 1);
        acc += w[k] * tmp.at(i, yi);
      }
      out.at(i, j) = acc;
    }
  }
  out.clamp01();
  return out;
}

SegMap resize_nearest(const SegMap& m, int width, int height) {
  if (width < 1 || height < 1) {
    throw LayoutError(ErrorCode::kDegenerateTarget, "resize target is empty");
  }
  if (m.width() == width && m.height() == height) return m;
  SegMap out(width, height);
  for (int j = 0; j < height; ++j) {
    const int sj = std::min(m.height() - 1,
                            static_cast<int>((j + 0.5) * m.height() / height));
    for (int i = 0; i < width; ++i) {
      const int si = std::min(m.width() - 1,
                              static_cast<int>((i + 0.5) * m.width() / width));
      out.at(i, j) = m.at(si, sj);
    }
  }
  return out;
}

}  // namespace roomlayout

#include "roomlayout/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace roomlayout {

std::vector<double> lsun_like_weights() {
  return {0.06, 0.06, 0.04, 0.04, 0.35, 0.35, 0.03, 0.03, 0.01, 0.02, 0.01};
}

void SynthConfig::check() const {
  if (frame_w < 16) {
    throw LayoutError(ErrorCode::kInvalidArgument, "frame_w must be >= 16");
  }
  if (type_weights.size() != std::size_t(kNumLsunTypes)) {
    throw LayoutError(ErrorCode::kInvalidArgument, "need 11 type weights");
  }
  double sum = 0.0;
  for (double w : type_weights) {
    if (!(w >= 0.0)) throw LayoutError(ErrorCode::kInvalidArgument, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw LayoutError(ErrorCode::kInvalidArgument, "type weights must sum to 1");
  }
  if (!(noise_sigma >= 0.0) || occluder_count < 0) {
    throw LayoutError(ErrorCode::kInvalidArgument, "negative noise settings");
  }
  for (double f : {occluder_max_frac, edge_dropout_frac}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw LayoutError(ErrorCode::kInvalidArgument, "fractions must be in [0, 1]");
    }
  }
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }

// Which boundary lines a type needs. `one_wall_line` types use a single
// vertical line on either side.
struct LinePlan {
  int vertical = 0;  // 0, 1 or 2
  bool top = false;
  bool bottom = false;
};

LinePlan plan_for(int type) {
  switch (type) {
    case 1: return {2, true, true};
    case 2: return {2, false, true};
    case 3: return {2, true, false};
    case 4: return {1, true, false};
    case 5: return {1, false, true};
    case 6: return {1, true, true};
    case 7: return {0, true, true};
    case 8: return {2, false, false};
    case 9: return {0, true, false};
    case 10: return {0, false, true};
    case 11: return {1, false, false};
    default: return {0, false, false};
  }
}

bool comfortable(const Layout& l, double w) {
  const LayoutType& t = l.topology();
  const std::vector<Point> frame_corners = l.frame.boundary();
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    const Point p = l.points[i];
    if (t.is_border(static_cast<int>(i))) {
      for (const Point& c : frame_corners) {
        if (distance(p, c) < 0.03 * w) return false;
      }
    } else if (border_distance(p, l.frame) < 0.03 * w) {
      return false;
    }
  }
  for (const FacePolygon& f : faces_of(l)) {
    if (signed_area(f.polygon) < 0.015 * w * w) return false;
  }
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    for (std::size_t j = i + 1; j < l.points.size(); ++j) {
      if (distance(l.points[i], l.points[j]) < 0.03 * w) return false;
    }
  }
  return true;
}

std::optional<Scene> try_scene(Rng& rng, int type, int w) {
  const double c = 0.5 * (w + 1.0);
  VanishingTriple vps;
  const double up = coin(rng) ? -1.0 : 1.0;
  vps.vp1 = {c + uniform(rng, -0.4, 0.4) * w, c + up * uniform(rng, 3.0, 10.0) * w};
  const double side = coin(rng) ? -1.0 : 1.0;
  vps.vp2 = {c + side * uniform(rng, 4.0, 12.0) * w, c + uniform(rng, -0.3, 0.3) * w};
  vps.vp3 = {uniform(rng, 0.3, 0.7) * w + 0.5, uniform(rng, 0.3, 0.7) * w + 0.5};

  const LinePlan plan = plan_for(type);
  const Point v3 = vps.vp3;
  auto vertical_through = [&](double x) {
    const Point p{x, v3.y};
    return Line{vps.vp1, p - vps.vp1};
  };
  auto horizontal_through = [&](double y) {
    const Point p{v3.x, y};
    return Line{vps.vp2, p - vps.vp2};
  };
  const double lo = 0.5 + 0.08 * w;
  const double hi = 0.5 + 0.92 * w;
  const double gap = 0.12 * w;
  std::vector<Line> vertical, horizontal;
  const bool left = plan.vertical == 2 || (plan.vertical == 1 && coin(rng));
  const bool right = plan.vertical == 2 || (plan.vertical == 1 && !left);
  if (left) vertical.push_back(vertical_through(uniform(rng, lo, v3.x - gap)));
  if (right) vertical.push_back(vertical_through(uniform(rng, v3.x + gap, hi)));
  if (plan.top) horizontal.push_back(horizontal_through(uniform(rng, lo, v3.y - gap)));
  if (plan.bottom) {
    horizontal.push_back(horizontal_through(uniform(rng, v3.y + gap, hi)));
  }

  std::optional<Layout> l = compose_layout(vertical, horizontal, v3, Frame{w, w});
  if (!l || l->type != type || !comfortable(*l, w)) return std::nullopt;
  return Scene{*l, vps};
}

int draw_type(Rng& rng, const std::vector<double>& weights) {
  std::discrete_distribution<int> d(weights.begin(), weights.end());
  return d(rng) + 1;
}

}  // namespace

Scene sample_scene_of_type(const SynthConfig& cfg, int type) {
  if (type < 1 || type > kNumLsunTypes) {
    throw LayoutError(ErrorCode::kInvalidArgument, "type must be in 1..11");
  }
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    if (auto s = try_scene(rng, type, cfg.frame_w)) return *s;
  }
  throw LayoutError(ErrorCode::kGenerationFailure,
                    "no valid scene of type " + std::to_string(type) +
                        " after 100 attempts");
}

Scene sample_scene(const SynthConfig& cfg) {
  cfg.check();
  Rng rng(cfg.seed);
  const int type = draw_type(rng, cfg.type_weights);
  SynthConfig sub = cfg;
  sub.seed = rng();
  return sample_scene_of_type(sub, type);
}

SceneMaps clean_maps(const Layout& l, const RenderConfig& rcfg) {
  RenderConfig r = rcfg;
  r.frame_w = l.frame.width;
  return {render_edges(l, r), render_seg(l)};
}

void zero_rects(HeatMap& E, const std::vector<PixelRect>& rects) {
  for (const PixelRect& r : rects) {
    for (int j = std::max(0, r.y0); j <= std::min(E.height() - 1, r.y1); ++j) {
      for (int i = std::max(0, r.x0); i <= std::min(E.width() - 1, r.x1); ++i) {
        E.at(i, j) = 0.0;
      }
    }
  }
}

void relabel_rects(SegMap& M, const std::vector<PixelRect>& rects,
                   const std::vector<SurfaceLabel>& labels) {
  for (std::size_t k = 0; k < rects.size(); ++k) {
    const PixelRect& r = rects[k];
    const auto code = static_cast<std::uint8_t>(labels[k]);
    for (int j = std::max(0, r.y0); j <= std::min(M.height() - 1, r.y1); ++j) {
      for (int i = std::max(0, r.x0); i <= std::min(M.width() - 1, r.x1); ++i) {
        M.at(i, j) = code;
      }
    }
  }
}

namespace {

PixelRect random_rect(Rng& rng, int w, int h, double max_frac) {
  const double area = uniform(rng, 0.25, 1.0) * max_frac * w * h;
  const double aspect = std::exp(uniform(rng, std::log(0.5), std::log(2.0)));
  const int rw = std::clamp(static_cast<int>(std::sqrt(area * aspect)), 1, w);
  const int rh = std::clamp(static_cast<int>(area / std::max(rw, 1)), 1, h);
  const int x0 = std::uniform_int_distribution<int>(0, w - rw)(rng);
  const int y0 = std::uniform_int_distribution<int>(0, h - rh)(rng);
  return {x0, y0, x0 + rw - 1, y0 + rh - 1};
}

}  // namespace

SceneMaps corrupt_maps(const HeatMap& E, const SegMap& M, const SynthConfig& cfg) {
  const int w = E.width();
  const int h = E.height();
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  SceneMaps out{E, M};

  if (cfg.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
    for (double& v : out.edges.values()) v = std::clamp(v + noise(rng), 0.0, 1.0);
  }

  if (cfg.occluder_max_frac > 0.0) {
    std::vector<PixelRect> occluders;
    for (int k = 0; k < cfg.occluder_count; ++k) {
      occluders.push_back(random_rect(rng, w, h, cfg.occluder_max_frac));
    }
    zero_rects(out.edges, occluders);
  }

  if (cfg.edge_dropout_frac > 0.0) {
    // Knock out square patches centred on strong edge pixels until the
    // requested share of them is gone.
    std::vector<std::size_t> strong;
    for (std::size_t p = 0; p < E.size(); ++p) {
      if (E.values()[p] >= 0.2) strong.push_back(p);
    }
    const std::size_t target =
        static_cast<std::size_t>(std::ceil(cfg.edge_dropout_frac * strong.size()));
    std::vector<char> dropped(E.size(), 0);
    std::size_t removed = 0;
    const int half = std::max(2, w / 40);
    for (int guard = 0; removed < target && guard < 10000; ++guard) {
      const std::size_t p =
          strong[std::uniform_int_distribution<std::size_t>(0, strong.size() - 1)(rng)];
      const int ci = static_cast<int>(p % w);
      const int cj = static_cast<int>(p / w);
      for (int j = std::max(0, cj - half); j <= std::min(h - 1, cj + half); ++j) {
        for (int i = std::max(0, ci - half); i <= std::min(w - 1, ci + half); ++i) {
          const std::size_t q = std::size_t(j) * w + i;
          out.edges.values()[q] = 0.0;
          if (!dropped[q] && E.values()[q] >= 0.2) {
            dropped[q] = 1;
            ++removed;
          }
        }
      }
    }
  }

  if (cfg.occluder_max_frac > 0.0 && cfg.occluder_count > 0) {
    std::vector<PixelRect> rects;
    std::vector<SurfaceLabel> labels;
    for (int k = 0; k < cfg.occluder_count; ++k) {
      rects.push_back(random_rect(rng, w, h, 0.25 * cfg.occluder_max_frac));
      labels.push_back(label_from_index(std::uniform_int_distribution<int>(2, 4)(rng)));
    }
    relabel_rects(out.seg, rects, labels);
  }
  return out;
}

LayoutPool build_pool(int n, const SynthConfig& cfg) {
  if (n < 1) throw LayoutError(ErrorCode::kInvalidArgument, "pool size must be >= 1");
  LayoutPool pool;
  pool.frame = Frame{cfg.frame_w, cfg.frame_w};
  pool.entries.reserve(n);
  SynthConfig c = cfg;
  for (int i = 0; i < n; ++i) {
    c.seed = cfg.seed + std::uint64_t(i);
    pool.entries.push_back(sample_scene(c).layout);
  }
  return pool;
}

LayoutPool ingest_layouts(const std::vector<Layout>& layouts, int frame_w) {
  LayoutPool pool;
  pool.frame = Frame{frame_w, frame_w};
  for (const Layout& l : layouts) {
    if (!is_known_type(l.type)) continue;
    Layout s = scale_layout(l, frame_w, frame_w);
    const LayoutType& t = s.topology();
    for (std::size_t i = 0; i < s.points.size() && i < t.corner_roles.size(); ++i) {
      if (t.is_border(static_cast<int>(i))) {
        s.points[i] = project_to_border(s.points[i], s.frame);
      }
      s.points[i].x = std::clamp(s.points[i].x, 1.0, double(frame_w));
      s.points[i].y = std::clamp(s.points[i].y, 1.0, double(frame_w));
    }
    if (validate(s)) pool.entries.push_back(std::move(s));
  }
  return pool;
}

Layout perturb_layout(const Layout& l, double px, std::mt19937_64& rng) {
  const LayoutType& t = l.topology();
  for (int attempt = 0; attempt < 200; ++attempt) {
    Layout out = l;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      Point& p = out.points[i];
      if (t.is_border(static_cast<int>(i))) {
        const bool on_vertical_edge = std::min(p.x - l.frame.left(),
                                               l.frame.right() - p.x) <= kBorderTolerance;
        const double step = coin(rng) ? px : -px;
        if (on_vertical_edge) {
          p.y += step;
        } else {
          p.x += step;
        }
      } else {
        const double a = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        p.x += px * std::cos(a);
        p.y += px * std::sin(a);
      }
    }
    if (validate(out)) return out;
  }
  return l;
}

}  // namespace roomlayout

#include "roomlayout/hypgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace roomlayout {

void SamplingConfig::check() const {
  if (H < 3) throw LayoutError(ErrorCode::kInvalidArgument, "H must be >= 3");
  if (N < 1) throw LayoutError(ErrorCode::kInvalidArgument, "N must be >= 1");
  if (!(D >= 0.0) || !std::isfinite(D)) {
    throw LayoutError(ErrorCode::kInvalidArgument, "D must be >= 0");
  }
  if (K1 < 1 || K2 < 1) {
    throw LayoutError(ErrorCode::kInvalidArgument, "K1 and K2 must be >= 1");
  }
}

Point Ray::direction() const { return {std::cos(angle), std::sin(angle)}; }

namespace {

constexpr double kPi = std::numbers::pi;

// Composed faces smaller than this share of the frame are not plausible
// room surfaces; such configurations are dropped.
constexpr double kMinFaceFraction = 0.002;

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

SectorProfile sector_profile(const HeatMap& E, Point vp, int H) {
  if (H < 3) throw LayoutError(ErrorCode::kInvalidArgument, "H must be >= 3");
  if (!is_finite(vp)) {
    throw LayoutError(ErrorCode::kDegenerateVP, "non-finite vanishing point");
  }
  const Frame f{E.width(), E.height()};
  const Point center{0.5 * (f.left() + f.right()), 0.5 * (f.top() + f.bottom())};
  if (distance(vp, center) <= 1.0) {
    throw LayoutError(ErrorCode::kDegenerateVP,
                      "vanishing point at the frame center");
  }
  const Point to_center = center - vp;
  const double phi0 = std::atan2(to_center.y, to_center.x);
  double lo = -kPi;
  double hi = kPi;
  const bool inside = vp.x > f.left() && vp.x < f.right() && vp.y > f.top() &&
                      vp.y < f.bottom();
  if (!inside) {
    lo = kPi;
    hi = -kPi;
    for (const Point& c : f.boundary()) {
      const Point d = c - vp;
      const double rel = wrap_angle(std::atan2(d.y, d.x) - phi0);
      lo = std::min(lo, rel);
      hi = std::max(hi, rel);
    }
  }
  SectorProfile p;
  p.vp = vp;
  p.H = H;
  p.angles.resize(H + 1);
  for (int k = 0; k <= H; ++k) p.angles[k] = phi0 + lo + (hi - lo) * k / H;

  std::vector<double> sum(H, 0.0);
  std::vector<std::size_t> count(H, 0);
  const double scale = H / (hi - lo);
  for (int j = 0; j < f.height; ++j) {
    const double dy = (j + 1.0) - vp.y;
    for (int i = 0; i < f.width; ++i) {
      const double dx = (i + 1.0) - vp.x;
      if (dx == 0.0 && dy == 0.0) continue;
      const double rel = wrap_angle(std::atan2(dy, dx) - phi0);
      const int k = std::clamp(static_cast<int>(std::floor((rel - lo) * scale)),
                               0, H - 1);
      sum[k] += E.at(i, j);
      ++count[k];
    }
  }
  p.strengths.resize(H);
  for (int k = 0; k < H; ++k) {
    p.strengths[k] = count[k] ? sum[k] / double(count[k]) : 0.0;
  }
  return p;
}

std::vector<int> select_sectors(const std::vector<double>& d, double D) {
  std::vector<int> out;
  const int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i) {
    const double prev = i > 0 ? d[i - 1] : 0.0;
    const double next = i + 1 < n ? d[i + 1] : 0.0;
    if (d[i] > next && d[i] > prev && (d[i] - next > D || d[i] - prev > D)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Ray> sample_rays(const SectorProfile& profile,
                             const std::vector<int>& selected, int N) {
  std::vector<Ray> rays;
  rays.reserve(selected.size() * std::max(N, 0));
  for (int s : selected) {
    if (s < 0 || s >= profile.H) {
      throw LayoutError(ErrorCode::kInvalidArgument, "sector index out of range");
    }
    const double a = profile.angles[s];
    const double b = profile.angles[s + 1];
    for (int k = 1; k <= N; ++k) {
      rays.push_back({profile.vp, a + k * (b - a) / (N + 1), s});
    }
  }
  return rays;
}

namespace {

constexpr SurfaceLabel kC = SurfaceLabel::kCeiling;
constexpr SurfaceLabel kF = SurfaceLabel::kFloor;
constexpr SurfaceLabel kFr = SurfaceLabel::kFrontWall;
constexpr SurfaceLabel kL = SurfaceLabel::kLeftWall;
constexpr SurfaceLabel kR = SurfaceLabel::kRightWall;

int classify_type(int walls, bool ceiling, bool floor) {
  // Rows: 3, 2, 1 visible walls. Columns: C and F, F only, C only, neither.
  static constexpr int table[3][4] = {{1, 2, 3, 8}, {6, 5, 4, 11}, {7, 10, 9, 12}};
  const int col = ceiling && floor ? 0 : floor ? 1 : ceiling ? 2 : 3;
  return table[3 - walls][col];
}

HalfPlane side_containing(const Line& l, Point p) {
  const HalfPlane h = HalfPlane::clockwise_of(l.origin, l.direction);
  return h.eval(p) >= 0.0 ? h : h.flipped();
}

// Enumerates the subsets used for composition: empty, singles, then pairs
// of rays from different sectors.
std::vector<std::vector<int>> ray_subsets(const std::vector<Ray>& rays) {
  std::vector<std::vector<int>> out{{}};
  const int n = static_cast<int>(rays.size());
  for (int i = 0; i < n; ++i) out.push_back({i});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool known = rays[i].sector >= 0 && rays[j].sector >= 0;
      if (known && rays[i].sector == rays[j].sector) continue;
      out.push_back({i, j});
    }
  }
  return out;
}

double rounded(double v) { return std::round(v * 1e6); }

}  // namespace

bool same_layout(const Layout& a, const Layout& b) {
  if (a.type != b.type || a.points.size() != b.points.size() ||
      !(a.frame == b.frame)) {
    return false;
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (rounded(a.points[i].x) != rounded(b.points[i].x) ||
        rounded(a.points[i].y) != rounded(b.points[i].y)) {
      return false;
    }
  }
  return true;
}

std::optional<Layout> compose_layout(const std::vector<Line>& vertical,
                                     const std::vector<Line>& horizontal,
                                     Point vp3, const Frame& frame) {
  if (vertical.size() > 2 || horizontal.size() > 2) return std::nullopt;
  std::optional<Line> vl, vr, ht, hb;
  for (const Line& v : vertical) {
    if (std::abs(v.direction.y) < 1e-12 * norm(v.direction)) return std::nullopt;
    const double x = v.origin.x + (vp3.y - v.origin.y) * v.direction.x / v.direction.y;
    std::optional<Line>& slot = x < vp3.x ? vl : vr;
    if (slot) return std::nullopt;
    slot = v;
  }
  for (const Line& h : horizontal) {
    if (std::abs(h.direction.x) < 1e-12 * norm(h.direction)) return std::nullopt;
    const double y = h.origin.y + (vp3.x - h.origin.x) * h.direction.y / h.direction.x;
    std::optional<Line>& slot = y < vp3.y ? ht : hb;
    if (slot) return std::nullopt;
    slot = h;
  }
  for (const auto* l : {&vl, &vr, &ht, &hb}) {
    if (!*l) continue;
    const HalfPlane h = HalfPlane::clockwise_of((*l)->origin, (*l)->direction);
    if (std::abs(h.eval(vp3)) <= 1e-9 * norm((*l)->direction)) return std::nullopt;
  }

  auto meet = [](const std::optional<Line>& a,
                 const std::optional<Line>& b) -> std::optional<Point> {
    if (!a || !b) return std::nullopt;
    return intersect_lines(*a, *b);
  };
  const std::optional<Point> p1 = meet(vl, ht);  // top-left
  const std::optional<Point> p2 = meet(vr, ht);  // top-right
  const std::optional<Point> p3 = meet(vr, hb);  // bottom-right
  const std::optional<Point> p4 = meet(vl, hb);  // bottom-left
  if ((vl && ht && !p1) || (vr && ht && !p2) || (vr && hb && !p3) ||
      (vl && hb && !p4)) {
    return std::nullopt;
  }
  auto cw = [&](const std::optional<Point>& p, std::vector<HalfPlane>& hs) {
    if (p) hs.push_back(HalfPlane::clockwise_of(vp3, *p - vp3));
  };
  auto ccw = [&](const std::optional<Point>& p, std::vector<HalfPlane>& hs) {
    if (p) hs.push_back(HalfPlane::clockwise_of(vp3, *p - vp3).flipped());
  };
  auto front = [&](const std::optional<Line>& l) { return side_containing(*l, vp3); };
  auto back = [&](const std::optional<Line>& l) {
    return side_containing(*l, vp3).flipped();
  };

  // Geometric faces before wall relabelling, indexed C, F, Fr, L, R.
  std::array<std::optional<std::vector<HalfPlane>>, kNumLabels> planes;
  {
    std::vector<HalfPlane> hs;
    for (const auto* l : {&vl, &vr, &ht, &hb}) {
      if (*l) hs.push_back(front(*l));
    }
    planes[label_index(kFr)] = hs;
  }
  if (ht) {
    std::vector<HalfPlane> hs{back(ht)};
    cw(p1, hs);
    ccw(p2, hs);
    planes[label_index(kC)] = hs;
  }
  if (hb) {
    std::vector<HalfPlane> hs{back(hb)};
    cw(p3, hs);
    ccw(p4, hs);
    planes[label_index(kF)] = hs;
  }
  if (vl) {
    std::vector<HalfPlane> hs{back(vl)};
    cw(p4, hs);
    ccw(p1, hs);
    planes[label_index(kL)] = hs;
  }
  if (vr) {
    std::vector<HalfPlane> hs{back(vr)};
    cw(p2, hs);
    ccw(p3, hs);
    planes[label_index(kR)] = hs;
  }

  const double min_visible = 1e-9 * frame.area();
  std::array<Polygon, kNumLabels> polys;
  std::array<bool, kNumLabels> visible{};
  for (int k = 0; k < kNumLabels; ++k) {
    if (!planes[k]) continue;
    Polygon poly = frame.boundary();
    for (const HalfPlane& h : *planes[k]) {
      poly = clip(poly, h);
      if (poly.empty()) break;
    }
    poly = remove_duplicate_vertices(poly, 1e-9);
    const double area = poly.size() >= 3 ? signed_area(poly) : 0.0;
    if (area > min_visible) {
      if (area < kMinFaceFraction * frame.area()) return std::nullopt;
      visible[k] = true;
      polys[k] = std::move(poly);
    }
  }

  // Relabel walls: three keep their roles, two become left/right, one is
  // the front wall.
  std::vector<int> walls;
  for (SurfaceLabel w : {kL, kFr, kR}) {
    if (visible[label_index(w)]) walls.push_back(label_index(w));
  }
  if (walls.empty()) return std::nullopt;
  std::array<int, kNumLabels> relabel{};
  for (int k = 0; k < kNumLabels; ++k) relabel[k] = k;
  if (walls.size() == 2) {
    relabel[walls[0]] = label_index(kL);
    relabel[walls[1]] = label_index(kR);
  } else if (walls.size() == 1) {
    relabel[walls[0]] = label_index(kFr);
  }
  std::array<Polygon, kNumLabels> face;
  std::array<bool, kNumLabels> has{};
  for (int k = 0; k < kNumLabels; ++k) {
    if (!visible[k]) continue;
    face[relabel[k]] = polys[k];
    has[relabel[k]] = true;
  }
  const int type = classify_type(static_cast<int>(walls.size()),
                                 has[label_index(kC)], has[label_index(kF)]);
  const LayoutType& t = layout_type(type);

  const double tol = 1e-6 * std::max(frame.width, frame.height);
  Layout layout{type, {}, frame};
  for (const CornerRole& role : t.corner_roles) {
    std::vector<Point> cands;
    for (const Point& v : face[label_index(role.faces[0])]) {
      const bool on_border = border_distance(v, frame) <= tol;
      if (on_border != (role.kind == CornerKind::kBorder)) continue;
      bool shared = true;
      for (std::size_t k = 1; k < role.faces.size() && shared; ++k) {
        const Polygon& other = face[label_index(role.faces[k])];
        shared = std::any_of(other.begin(), other.end(),
                             [&](const Point& q) { return distance(q, v) <= tol; });
      }
      if (shared) cands.push_back(v);
    }
    if (role.order == CornerOrder::kNone) {
      if (cands.size() != 1) return std::nullopt;
      layout.points.push_back(cands[0]);
      continue;
    }
    if (cands.size() != 2) return std::nullopt;
    const bool by_x = role.order == CornerOrder::kSmallerX ||
                      role.order == CornerOrder::kLargerX;
    const bool smaller = role.order == CornerOrder::kSmallerX ||
                         role.order == CornerOrder::kSmallerY;
    const auto key = [&](const Point& p) { return by_x ? p.x : p.y; };
    const bool first_smaller = key(cands[0]) < key(cands[1]);
    layout.points.push_back(first_smaller == smaller ? cands[0] : cands[1]);
  }

  if (!validate(layout)) return std::nullopt;
  const std::vector<FacePolygon> faces = faces_of(layout);
  for (const FacePolygon& fp : faces) {
    const int k = label_index(fp.label);
    if (!has[k]) return std::nullopt;
    if (std::abs(signed_area(fp.polygon) - signed_area(face[k])) >
        1e-6 * frame.area()) {
      return std::nullopt;
    }
  }
  return layout;
}

std::vector<Layout> compose_layouts(const std::vector<Ray>& rays1,
                                    const std::vector<Ray>& rays2,
                                    const VanishingTriple& vps,
                                    const Frame& frame) {
  std::vector<Layout> out;
  const auto sub1 = ray_subsets(rays1);
  const auto sub2 = ray_subsets(rays2);
  std::vector<Line> vertical, horizontal;
  for (const auto& s1 : sub1) {
    vertical.clear();
    for (int i : s1) vertical.push_back({rays1[i].origin, rays1[i].direction()});
    for (const auto& s2 : sub2) {
      horizontal.clear();
      for (int i : s2) horizontal.push_back({rays2[i].origin, rays2[i].direction()});
      std::optional<Layout> l = compose_layout(vertical, horizontal, vps.vp3, frame);
      if (!l) continue;
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const Layout& o) { return same_layout(o, *l); });
      if (!dup) out.push_back(std::move(*l));
    }
  }
  return out;
}

std::vector<Layout> sample_layouts(const HeatMap& E, const VanishingTriple& vps,
                                   const SamplingConfig& cfg) {
  cfg.check();
  if (!vps.distinct() || !is_finite(vps.vp3)) {
    throw LayoutError(ErrorCode::kDegenerateVP, "vanishing points must be distinct");
  }
  const SectorProfile prof1 = sector_profile(E, vps.vp1, cfg.H);
  const SectorProfile prof2 = sector_profile(E, vps.vp2, cfg.H);
  const std::vector<Ray> rays1 =
      sample_rays(prof1, select_sectors(prof1.strengths, cfg.D), cfg.N);
  const std::vector<Ray> rays2 =
      sample_rays(prof2, select_sectors(prof2.strengths, cfg.D), cfg.N);
  return compose_layouts(rays1, rays2, vps, Frame{E.width(), E.height()});
}

void LayoutPool::check() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].frame == frame)) {
      throw LayoutError(ErrorCode::kInvalidArgument,
                        "pool entry " + std::to_string(i) + " has a different frame");
    }
    if (auto err = validation_error(entries[i])) {
      throw LayoutError(ErrorCode::kInvalidArgument,
                        "pool entry " + std::to_string(i) + ": " + *err);
    }
  }
}

std::vector<ScoredLayout> best_per_type(const std::vector<ScoredLayout>& scored,
                                        int k) {
  std::map<int, std::size_t> best;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    auto [it, inserted] = best.try_emplace(scored[i].layout.type, i);
    if (!inserted && scored[i].score > scored[it->second].score) it->second = i;
  }
  std::vector<std::size_t> order;
  for (const auto& [type, idx] : best) order.push_back(idx);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].score != scored[b].score) return scored[a].score > scored[b].score;
    return a < b;
  });
  if (static_cast<int>(order.size()) > k) order.resize(k);
  std::vector<ScoredLayout> out;
  for (std::size_t i : order) out.push_back(scored[i]);
  return out;
}

std::vector<ScoredLayout> generate_ray_hypotheses(const LayoutScorer& scorer,
                                                  const VanishingTriple& vps,
                                                  const SamplingConfig& cfg) {
  const std::vector<Layout> composed = sample_layouts(scorer.edges(), vps, cfg);
  if (composed.empty()) {
    throw LayoutError(ErrorCode::kEmptyHypotheses, "no layout could be composed");
  }
  return best_per_type(scorer.score_batch(composed), cfg.K1);
}

std::vector<ScoredLayout> generate_pool_hypotheses(const LayoutScorer& scorer,
                                                   const LayoutPool& pool,
                                                   int K2) {
  if (pool.entries.empty()) {
    throw LayoutError(ErrorCode::kEmptyPool, "layout pool is empty");
  }
  if (K2 < 1) throw LayoutError(ErrorCode::kInvalidArgument, "K2 must be >= 1");
  return best_per_type(scorer.score_batch(pool.entries), K2);
}

std::vector<ScoredLayout> combine_hypotheses(const std::vector<ScoredLayout>& a,
                                             const std::vector<ScoredLayout>& b) {
  std::vector<ScoredLayout> out;
  for (const auto* src : {&a, &b}) {
    for (const ScoredLayout& s : *src) {
      const bool dup = std::any_of(out.begin(), out.end(), [&](const ScoredLayout& o) {
        return same_layout(o.layout, s.layout);
      });
      if (!dup) out.push_back(s);
    }
  }
  return out;
}

}  // namespace roomlayout

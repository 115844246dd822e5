#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond the plain data types.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/maps.hpp"
#include "roomlayout/synth.hpp"

namespace oracle {

using roomlayout::Frame;
using roomlayout::HeatMap;
using roomlayout::Layout;
using roomlayout::Point;
using roomlayout::SegMap;

inline double seg_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Winding-number containment; points within eps of an edge count as inside.
inline bool contains(const std::vector<Point>& poly, Point p, double eps = 1e-9) {
  const std::size_t n = poly.size();
  int wn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i], b = poly[(i + 1) % n];
    if (seg_distance(p, a, b) <= eps) return true;
    const double c = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && c > 0) ++wn;
    } else {
      if (b.y <= p.y && c < 0) --wn;
    }
  }
  return wn != 0;
}

inline double polygon_area(const std::vector<Point>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i], b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return std::abs(s) / 2;
}

// exp(-x^2 / 2 sigma^2) on [-r, r], r = ceil(3 sigma), normalized.
inline std::vector<double> kernel(double sigma) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> k(2 * r + 1);
  for (int i = -r; i <= r; ++i) k[i + r] = std::exp(-double(i * i) / (2 * sigma * sigma));
  const double s = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& v : k) v /= s;
  return k;
}

// Dense 2D convolution with the radially evaluated 2D Gaussian, zero padding.
inline HeatMap blur2d(const HeatMap& m, double sigma) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> k2((2 * r + 1) * (2 * r + 1));
  double total = 0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-double(dx * dx + dy * dy) / (2 * sigma * sigma));
      k2[(dy + r) * (2 * r + 1) + dx + r] = v;
      total += v;
    }
  }
  HeatMap out(m.width(), m.height());
  for (int j = 0; j < m.height(); ++j) {
    for (int i = 0; i < m.width(); ++i) {
      double s = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int y = j + dy;
        if (y < 0 || y >= m.height()) continue;
        for (int dx = -r; dx <= r; ++dx) {
          const int x = i + dx;
          if (x < 0 || x >= m.width()) continue;
          const double v = m.at(x, y);
          if (v != 0) s += v * k2[(dy + r) * (2 * r + 1) + dx + r];
        }
      }
      out.at(i, j) = s / total;
    }
  }
  return out;
}

// Geometry of a layout as the renderer sees it: border corners pushed onto
// the nearest frame edge(s) within tolerance.
inline std::vector<Point> snapped(const Layout& l) {
  std::vector<Point> pts = l.points;
  const Frame& f = l.frame;
  const auto& t = l.topology();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!t.is_border(static_cast<int>(k))) continue;
    Point& p = pts[k];
    const double left = 0.5, right = f.width + 0.5, top = 0.5, bottom = f.height + 0.5;
    const double dx = std::min(std::abs(p.x - left), std::abs(p.x - right));
    const double dy = std::min(std::abs(p.y - top), std::abs(p.y - bottom));
    const double snap_x = std::abs(p.x - left) < std::abs(p.x - right) ? left : right;
    const double snap_y = std::abs(p.y - top) < std::abs(p.y - bottom) ? top : bottom;
    const double tol = 0.5 + 1e-9;
    if (dx <= tol && dy <= tol) {
      p = {snap_x, snap_y};
    } else if (dx <= dy) {
      p = {snap_x, std::clamp(p.y, top, bottom)};
    } else {
      p = {std::clamp(p.x, left, right), snap_y};
    }
  }
  return pts;
}

// Unblurred strokes: pixel centers within line_width / 2 of an interior
// boundary segment.
inline HeatMap strokes(const Layout& l, int line_width) {
  const std::vector<Point> pts = snapped(l);
  HeatMap out(l.frame.width, l.frame.height);
  const double r = line_width / 2.0;
  for (const auto& [a, b] : l.topology().segments) {
    for (int j = 0; j < out.height(); ++j) {
      for (int i = 0; i < out.width(); ++i) {
        if (seg_distance({i + 1.0, j + 1.0}, pts[a], pts[b]) <= r + 1e-9) out.at(i, j) = 1;
      }
    }
  }
  return out;
}

inline HeatMap edges(const Layout& l, int line_width, double sigma) {
  HeatMap e = blur2d(strokes(l, line_width), sigma);
  for (double& v : e.values()) v = std::clamp(v, 0.0, 1.0);
  return e;
}

// Best fraction of agreeing pixels over label permutations applied to b.
inline double matched_accuracy(const SegMap& a, const SegMap& b, bool wall_only) {
  std::array<int, 5> perm{1, 2, 3, 4, 5};
  double best = 0;
  do {
    if (wall_only && (perm[0] != 1 || perm[1] != 2)) continue;
    std::size_t agree = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a.labels()[k] == perm[b.labels()[k] - 1]) ++agree;
    }
    best = std::max(best, double(agree) / double(a.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double frobenius(const HeatMap& a, const HeatMap& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a.values()[k] - b.values()[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline SegMap random_seg(int w, int h, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 5);
  SegMap m(w, h);
  for (auto& v : m.labels()) v = static_cast<std::uint8_t>(d(rng));
  return m;
}

inline HeatMap random_heat(int w, int h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0, 1);
  HeatMap m(w, h);
  for (auto& v : m.values()) v = d(rng);
  return m;
}

// Ground-truth scenes of every LSUN type, `per_type` each.
inline std::vector<roomlayout::Scene> scenes_of_all_types(int per_type,
                                                          std::uint64_t seed = 1) {
  std::vector<roomlayout::Scene> out;
  for (int t = 1; t <= roomlayout::kNumLsunTypes; ++t) {
    for (int k = 0; k < per_type; ++k) {
      roomlayout::SynthConfig c;
      c.seed = seed + 1000 * t + k;
      out.push_back(roomlayout::sample_scene_of_type(c, t));
    }
  }
  return out;
}

}  // namespace oracle

#include "roomlayout/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roomlayout {

namespace {

constexpr double kEps = 1e-9;

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty() const { return lo > hi; }
  void intersect(double l, double h) {
    lo = std::max(lo, l);
    hi = std::min(hi, h);
  }
};

// Restricts `iv` to x with lo <= alpha * x + beta <= hi.
void constrain(Interval& iv, double alpha, double beta, double lo, double hi) {
  if (std::abs(alpha) < 1e-14) {
    if (beta < lo || beta > hi) iv.intersect(1.0, 0.0);
    return;
  }
  double a = (lo - beta) / alpha;
  double b = (hi - beta) / alpha;
  if (a > b) std::swap(a, b);
  iv.intersect(a, b);
}

void merge_row(std::vector<Span>& row) {
  if (row.size() < 2) return;
  std::sort(row.begin(), row.end(),
            [](const Span& a, const Span& b) { return a.first < b.first; });
  std::size_t k = 0;
  for (std::size_t i = 1; i < row.size(); ++i) {
    if (row[i].first <= row[k].last + 1) {
      row[k].last = std::max(row[k].last, row[i].last);
    } else {
      row[++k] = row[i];
    }
  }
  row.resize(k + 1);
}

void add_span(std::vector<Span>& row, double xl, double xr, int width) {
  // Pixel u (1-based) has its center at x = u.
  const int first = std::max(1, static_cast<int>(std::ceil(xl - kEps)));
  const int last = std::min(width, static_cast<int>(std::floor(xr + kEps)));
  if (first <= last) row.push_back({first - 1, last - 1});
}

}  // namespace

void RenderConfig::check() const {
  if (line_width_px < 1) {
    throw LayoutError(ErrorCode::kInvalidArgument, "line_width_px must be >= 1");
  }
  if (!(blur_sigma > 0.0) || !std::isfinite(blur_sigma)) {
    throw LayoutError(ErrorCode::kInvalidArgument, "blur_sigma must be > 0");
  }
  if (frame_w < 1) {
    throw LayoutError(ErrorCode::kInvalidArgument, "frame_w must be >= 1");
  }
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw LayoutError(ErrorCode::kInvalidArgument, "sigma must be > 0");
  }
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + r];
  }
  for (double& v : k) v /= sum;
  return k;
}

HeatMap gaussian_blur(const HeatMap& m, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  const int w = m.width();
  const int h = m.height();
  HeatMap tmp(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      const int lo = std::max(0, i - r);
      const int hi = std::min(w - 1, i + r);
      for (int q = lo; q <= hi; ++q) acc += k[q - i + r] * m.at(q, j);
      tmp.at(i, j) = acc;
    }
  }
  HeatMap out(w, h);
  for (int j = 0; j < h; ++j) {
    const int lo = std::max(0, j - r);
    const int hi = std::min(h - 1, j + r);
    for (int q = lo; q <= hi; ++q) {
      const double kq = k[q - j + r];
      for (int i = 0; i < w; ++i) out.at(i, j) += kq * tmp.at(i, q);
    }
  }
  return out;
}

void stroke_spans(Point a, Point b, double radius, const Frame& frame,
                  std::vector<std::vector<Span>>& rows) {
  rows.resize(frame.height);
  const Point d = b - a;
  const double len = norm(d);
  const double r2 = radius * radius;
  const int j0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)) - 2);
  const int j1 = std::min(frame.height - 1,
                          static_cast<int>(std::ceil(std::max(a.y, b.y) + radius)));
  for (int j = j0; j <= j1; ++j) {
    const double y = j + 1.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& c : {a, b}) {
      const double dy = y - c.y;
      if (dy * dy <= r2) {
        const double s = std::sqrt(r2 - dy * dy);
        lo = std::min(lo, c.x - s);
        hi = std::max(hi, c.x + s);
      }
    }
    if (len > 0.0) {
      // |n . (p - a)| <= radius and 0 <= d . (p - a) <= |d|^2, p = (x, y).
      const Point n{-d.y / len, d.x / len};
      Interval iv;
      constrain(iv, n.x, n.y * (y - a.y) - n.x * a.x, -radius, radius);
      constrain(iv, d.x, d.y * (y - a.y) - d.x * a.x, 0.0, len * len);
      if (!iv.empty()) {
        lo = std::min(lo, iv.lo);
        hi = std::max(hi, iv.hi);
      }
    }
    if (lo <= hi) add_span(rows[j], lo, hi, frame.width);
  }
}

HeatMap stroke_mask(const Layout& l, int line_width_px) {
  const LayoutType& t = l.topology();
  const std::vector<Point> pts = resolved_corners(l);
  std::vector<std::vector<Span>> rows(l.frame.height);
  for (auto [i, j] : t.segments) {
    stroke_spans(pts[i], pts[j], 0.5 * line_width_px, l.frame, rows);
  }
  HeatMap out(l.frame.width, l.frame.height);
  for (int j = 0; j < l.frame.height; ++j) {
    for (const Span& s : rows[j]) {
      for (int i = s.first; i <= s.last; ++i) out.at(i, j) = 1.0;
    }
  }
  return out;
}

Renderer::Renderer(const RenderConfig& cfg) : cfg_(cfg) {
  cfg_.check();
  kernel_ = gaussian_kernel(cfg_.blur_sigma);
  kernel_prefix_.assign(kernel_.size() + 1, 0.0);
  for (std::size_t k = 0; k < kernel_.size(); ++k) {
    kernel_prefix_[k + 1] = kernel_prefix_[k] + kernel_[k];
  }
  kernel_f_.assign(kernel_.begin(), kernel_.end());
}

namespace {

std::uint8_t nearest_face(Point p, const std::vector<FacePolygon>& faces) {
  double best = std::numeric_limits<double>::infinity();
  std::uint8_t code = static_cast<std::uint8_t>(faces.front().label);
  for (const FacePolygon& f : faces) {
    if (point_in_polygon(p, f.polygon)) return static_cast<std::uint8_t>(f.label);
    const std::size_t n = f.polygon.size();
    for (std::size_t e = 0; e < n; ++e) {
      const double d = distance_to_segment(p, f.polygon[e], f.polygon[(e + 1) % n]);
      if (d < best) {
        best = d;
        code = static_cast<std::uint8_t>(f.label);
      }
    }
  }
  return code;
}

// Adds the parts of [first, last] not yet covered by `claimed`.
void claim(std::vector<LabelRun>& claimed, int first, int last, std::uint8_t code) {
  if (first > last) return;
  const std::size_t n = claimed.size();
  // Claimed runs stay sorted by `first`; cut the new span around them.
  for (std::size_t k = 0; k < n && first <= last; ++k) {
    const LabelRun c = claimed[k];
    if (c.last < first) continue;
    if (c.first > last) break;
    if (c.first > first) claimed.push_back({first, c.first - 1, code});
    first = c.last + 1;
  }
  if (first <= last) claimed.push_back({first, last, code});
  std::inplace_merge(claimed.begin(), claimed.begin() + n, claimed.end(),
                     [](const LabelRun& a, const LabelRun& b) { return a.first < b.first; });
}

}  // namespace

const std::vector<std::vector<LabelRun>>& Renderer::seg_runs(
    const std::vector<FacePolygon>& faces, const Frame& frame) {
  const int w = frame.width;
  const int h = frame.height;
  runs_.resize(h);
  face_ymin_.clear();
  face_ymax_.clear();
  for (const FacePolygon& f : faces) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& p : f.polygon) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
    face_ymin_.push_back(lo);
    face_ymax_.push_back(hi);
  }
  auto span_of = [&](double xl, double xr, int& first, int& last) {
    first = std::max(1, static_cast<int>(std::ceil(xl - kEps))) - 1;
    last = std::min(w, static_cast<int>(std::floor(xr + kEps))) - 1;
  };
  for (int j = 0; j < h; ++j) {
    const double y = j + 1.0;
    claim_.clear();
    // Faces arrive in label order, so the first face to claim a pixel is
    // the lowest label.
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      const FacePolygon& f = faces[fi];
      if (y < face_ymin_[fi] - kEps || y > face_ymax_[fi] + kEps) continue;
      const std::uint8_t code = static_cast<std::uint8_t>(f.label);
      const Polygon& poly = f.polygon;
      const std::size_t n = poly.size();
      crossings_.clear();
      int first = 0, last = -1;
      for (std::size_t e = 0; e < n; ++e) {
        const Point a = poly[e];
        const Point b = poly[(e + 1) % n];
        if ((a.y > y) != (b.y > y)) {
          crossings_.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        // Boundary points on the scanline belong to the closed polygon.
        if (std::abs(a.y - y) <= kEps) {
          const double xr = std::abs(b.y - y) <= kEps ? b.x : a.x;
          span_of(std::min(a.x, xr), std::max(a.x, xr), first, last);
          claim(claim_, first, last, code);
        }
      }
      std::sort(crossings_.begin(), crossings_.end());
      for (std::size_t c = 0; c + 1 < crossings_.size(); c += 2) {
        span_of(crossings_[c], crossings_[c + 1], first, last);
        claim(claim_, first, last, code);
      }
    }
    // Pixels missed through rounding go to the nearest face.
    int next = 0;
    const std::size_t n = claim_.size();
    for (std::size_t k = 0; k <= n; ++k) {
      const int stop = k < n ? claim_[k].first : w;
      for (int i = next; i < stop; ++i) {
        claim_.push_back({i, i, nearest_face({i + 1.0, y}, faces)});
      }
      if (k < n) next = claim_[k].last + 1;
    }
    std::sort(claim_.begin(), claim_.end(),
              [](const LabelRun& a, const LabelRun& b) { return a.first < b.first; });
    std::vector<LabelRun>& row = runs_[j];
    row.clear();
    for (const LabelRun& r : claim_) {
      if (!row.empty() && row.back().label == r.label && row.back().last + 1 == r.first) {
        row.back().last = r.last;
      } else {
        row.push_back(r);
      }
    }
  }
  return runs_;
}

void Renderer::render_seg(const std::vector<FacePolygon>& faces,
                          const Frame& frame, SegMap& out) {
  if (out.width() != frame.width || out.height() != frame.height) {
    out = SegMap(frame.width, frame.height);
  }
  const auto& runs = seg_runs(faces, frame);
  for (int j = 0; j < frame.height; ++j) {
    std::uint8_t* row = out.labels().data() + std::size_t(j) * frame.width;
    for (const LabelRun& r : runs[j]) {
      std::fill(row + r.first, row + r.last + 1, r.label);
    }
  }
}

void Renderer::prepare_edges(const Layout& l) {
  width_ = l.frame.width;
  height_ = l.frame.height;
  const int w = width_;
  const int h = height_;
  rows_.resize(h);
  for (auto& row : rows_) row.clear();
  tmp_.resize(std::size_t(w) * h);
  tmp_first_.assign(h, w);
  tmp_last_.assign(h, -1);
  row_out_.resize(w);

  const LayoutType& t = l.topology();
  if (t.segments.empty()) return;
  const std::vector<Point> pts = resolved_corners(l);
  const double radius = 0.5 * cfg_.line_width_px;
  for (auto [a, b] : t.segments) stroke_spans(pts[a], pts[b], radius, l.frame, rows_);

  // Horizontal pass: a run of ones [a, b] convolves to CK(b - i) -
  // CK(a - 1 - i), with CK the cumulative kernel. cumulative_ holds CK
  // padded with zeros and ones so no clamping is needed.
  const int r = static_cast<int>(kernel_.size() / 2);
  const int off = w + r + 1;
  if (static_cast<int>(cumulative_.size()) != 2 * off + 1) {
    cumulative_.assign(2 * off + 1, 0.0f);
    for (int d = -off; d <= off; ++d) {
      const int m = std::clamp(d + r + 1, 0, 2 * r + 1);
      cumulative_[d + off] = static_cast<float>(kernel_prefix_[m]);
    }
  }
  const float* CK = cumulative_.data() + off;
  for (int j = 0; j < h; ++j) {
    std::vector<Span>& row = rows_[j];
    if (row.empty()) continue;
    merge_row(row);
    const int c0 = std::max(0, row.front().first - r);
    const int c1 = std::min(w - 1, row.back().last + r);
    tmp_first_[j] = c0;
    tmp_last_[j] = c1;
    float* __restrict trow = tmp_.data() + std::size_t(j) * w;
    std::fill(trow + c0, trow + c1 + 1, 0.0f);
    for (const Span& s : row) {
      const int i0 = std::max(0, s.first - r);
      const int i1 = std::min(w - 1, s.last + r);
      const float* __restrict hi = CK + s.last;
      const float* __restrict lo = CK + s.first - 1;
      for (int i = i0; i <= i1; ++i) trow[i] += hi[-i] - lo[-i];
    }
  }
}

bool Renderer::edge_row(int j, int& first, int& last, const float*& values) {
  const int r = static_cast<int>(kernel_.size() / 2);
  const int q0 = std::max(0, j - r);
  const int q1 = std::min(height_ - 1, j + r);
  int c0 = width_;
  int c1 = -1;
  for (int q = q0; q <= q1; ++q) {
    c0 = std::min(c0, tmp_first_[q]);
    c1 = std::max(c1, tmp_last_[q]);
  }
  if (c0 > c1) return false;
  float* __restrict out = row_out_.data();
  std::fill(out + c0, out + c1 + 1, 0.0f);
  const float* K = kernel_f_.data();
  for (int q = q0; q <= q1; ++q) {
    const int a = tmp_first_[q];
    const int b = tmp_last_[q];
    if (a > b) continue;
    const float kq = K[q - j + r];
    const float* __restrict trow = tmp_.data() + std::size_t(q) * width_;
    for (int i = a; i <= b; ++i) out[i] += kq * trow[i];
  }
  for (int i = c0; i <= c1; ++i) out[i] = std::min(1.0f, out[i]);
  first = c0;
  last = c1;
  values = out;
  return true;
}

void Renderer::render_edges(const Layout& l, HeatMap& out) {
  const int w = l.frame.width;
  const int h = l.frame.height;
  if (out.width() != w || out.height() != h) out = HeatMap(w, h);
  std::fill(out.values().begin(), out.values().end(), 0.0);
  prepare_edges(l);
  for (int j = 0; j < h; ++j) {
    int first, last;
    const float* v;
    if (!edge_row(j, first, last, v)) continue;
    for (int i = first; i <= last; ++i) out.at(i, j) = v[i];
  }
}

namespace {

Layout to_square(const Layout& l, int frame_w) {
  if (l.frame.width == frame_w && l.frame.height == frame_w) return l;
  return scale_layout(l, frame_w, frame_w);
}

}  // namespace

SegMap render_seg(const Layout& l) {
  Renderer r;
  SegMap out;
  r.render_seg(faces_of(l), l.frame, out);
  return out;
}

SegMap render_seg(const Layout& l, int frame_w) {
  return render_seg(to_square(l, frame_w));
}

HeatMap render_edges(const Layout& l, const RenderConfig& cfg) {
  const Layout s = to_square(l, cfg.frame_w);
  faces_of(s);  // topology check
  Renderer r(cfg);
  HeatMap out;
  r.render_edges(s, out);
  return out;
}

}  // namespace roomlayout

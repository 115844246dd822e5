#include "roomlayout/score.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

namespace roomlayout {

void ScoreConfig::check() const {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw LayoutError(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
  if (!(s2_normalizer > 0.0) || !std::isfinite(s2_normalizer)) {
    throw LayoutError(ErrorCode::kInvalidArgument, "s2_normalizer must be > 0");
  }
}

SegMap argmax_labels(const SemanticStack& stack) {
  const HeatMap& first = stack.channels[0];
  for (const HeatMap& c : stack.channels) {
    if (!c.same_shape(first)) {
      throw LayoutError(ErrorCode::kDimensionMismatch, "stack channel sizes differ");
    }
  }
  SegMap out(first.width(), first.height());
  const std::size_t n = first.size();
  for (std::size_t p = 0; p < n; ++p) {
    int best = 0;
    double v = stack.channels[0].values()[p];
    for (int k = 1; k < kNumLabels; ++k) {
      const double c = stack.channels[k].values()[p];
      if (c > v) {
        v = c;
        best = k;
      }
    }
    out.labels()[p] = static_cast<std::uint8_t>(best + 1);
  }
  return out;
}

Confusion confusion_matrix(const SegMap& a, const SegMap& b) {
  if (!a.same_shape(b)) {
    throw LayoutError(ErrorCode::kDimensionMismatch, "segmentation sizes differ");
  }
  std::array<std::size_t, 64> hist{};
  const std::uint8_t* pa = a.labels().data();
  const std::uint8_t* pb = b.labels().data();
  const std::size_t n = a.size();
  for (std::size_t p = 0; p < n; ++p) {
    ++hist[((pa[p] & 7u) << 3) | (pb[p] & 7u)];
  }
  Confusion c{};
  for (int i = 0; i < kNumLabels; ++i) {
    for (int j = 0; j < kNumLabels; ++j) c[i][j] = hist[((i + 1) << 3) | (j + 1)];
  }
  return c;
}

double matched_accuracy(const Confusion& c, std::size_t total, bool wall_only) {
  if (total == 0) return 1.0;
  std::array<int, kNumLabels> perm{0, 1, 2, 3, 4};
  std::size_t best = 0;
  // perm[b] is the label of the first map that label b of the second map is
  // matched to.
  auto eval = [&] {
    std::size_t s = 0;
    for (int b = 0; b < kNumLabels; ++b) s += c[perm[b]][b];
    best = std::max(best, s);
  };
  if (wall_only) {
    do {
      eval();
    } while (std::next_permutation(perm.begin() + 2, perm.end()));
  } else {
    do {
      eval();
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return double(best) / double(total);
}

double s1_matched_accuracy(const SegMap& a, const SegMap& b,
                           const ScoreConfig& cfg) {
  return matched_accuracy(confusion_matrix(a, b), a.size(), cfg.wall_only_matching);
}

double s2_edge_distance(const HeatMap& a, const HeatMap& b,
                        const ScoreConfig& cfg) {
  if (!a.same_shape(b)) {
    throw LayoutError(ErrorCode::kDimensionMismatch, "edge map sizes differ");
  }
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  const std::size_t n = a.size();
  double ss = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double d = pa[p] - pb[p];
    ss += d * d;
  }
  if (ss == 0.0) return 0.0;
  return -std::sqrt(ss) / cfg.s2_normalizer;
}

ScoredLayout score_layout(const Layout& l, const SegMap& M, const HeatMap& E,
                          const ScoreConfig& cfg, const RenderConfig& rcfg) {
  return LayoutScorer(M, E, cfg, rcfg).score(l);
}

LayoutScorer::LayoutScorer(SegMap M, HeatMap E, const ScoreConfig& cfg,
                           const RenderConfig& rcfg)
    : M_(std::move(M)), E_(std::move(E)), cfg_(cfg), rcfg_(rcfg) {
  cfg_.check();
  rcfg_.check();
  if (M_.width() != E_.width() || M_.height() != E_.height()) {
    throw LayoutError(ErrorCode::kDimensionMismatch,
                      "segmentation and edge maps differ in size");
  }
  if (M_.size() == 0) {
    throw LayoutError(ErrorCode::kDimensionMismatch, "empty maps");
  }
  frame_ = Frame{M_.width(), M_.height()};

  const int w = frame_.width;
  const int h = frame_.height;
  const std::size_t stride = std::size_t(w) + 1;
  label_prefix_.assign(std::size_t(h) * kNumLabels * stride, 0);
  sq_prefix_.assign(std::size_t(h) * stride, 0.0);
  edges_f_.resize(E_.size());
  for (int j = 0; j < h; ++j) {
    std::uint32_t* rows[kNumLabels];
    for (int k = 0; k < kNumLabels; ++k) {
      rows[k] = label_prefix_.data() + (std::size_t(j) * kNumLabels + k) * stride;
    }
    double* sq = sq_prefix_.data() + std::size_t(j) * stride;
    for (int i = 0; i < w; ++i) {
      const int label = M_.at(i, j);
      for (int k = 0; k < kNumLabels; ++k) rows[k][i + 1] = rows[k][i] + (label == k + 1);
      const float e = static_cast<float>(E_.at(i, j));
      edges_f_[std::size_t(j) * w + i] = e;
      sq[i + 1] = sq[i] + double(e) * double(e);
    }
  }
}

ScoredLayout LayoutScorer::score(const Layout& l, ScoreWorkspace& ws) const {
  Layout scaled;
  const Layout* cur = &l;
  if (!(l.frame == frame_)) {
    scaled = scale_layout(l, frame_.width, frame_.height);
    cur = &scaled;
  }
  const int w = frame_.width;
  const int h = frame_.height;
  const std::size_t stride = std::size_t(w) + 1;

  // S1 from label runs and the row prefix counts of M.
  const auto& runs = ws.renderer.seg_runs(faces_of(*cur), frame_);
  Confusion conf{};
  for (int j = 0; j < h; ++j) {
    const std::uint32_t* base = label_prefix_.data() + std::size_t(j) * kNumLabels * stride;
    for (const LabelRun& r : runs[j]) {
      auto& row = conf[r.label - 1];
      for (int k = 0; k < kNumLabels; ++k) {
        const std::uint32_t* p = base + k * stride;
        row[k] += p[r.last + 1] - p[r.first];
      }
    }
  }

  // S2 row by row; all-zero parts of the rendered map only contribute E^2.
  ws.renderer.prepare_edges(*cur);
  double ss = 0.0;
  for (int j = 0; j < h; ++j) {
    const double* sq = sq_prefix_.data() + std::size_t(j) * stride;
    int first, last;
    const float* v;
    if (!ws.renderer.edge_row(j, first, last, v)) {
      ss += sq[w];
      continue;
    }
    const float* e = edges_f_.data() + std::size_t(j) * w;
    float acc[8] = {};
    int i = first;
    for (; i + 8 <= last + 1; i += 8) {
      for (int k = 0; k < 8; ++k) {
        const float d = v[i + k] - e[i + k];
        acc[k] += d * d;
      }
    }
    double row = 0.0;
    for (; i <= last; ++i) {
      const float d = v[i] - e[i];
      row += double(d) * double(d);
    }
    for (float a : acc) row += a;
    ss += row + sq[first] + (sq[w] - sq[last + 1]);
  }

  ScoredLayout out;
  out.layout = l;
  out.s1 = matched_accuracy(conf, M_.size(), cfg_.wall_only_matching);
  out.s2 = ss <= 0.0 ? 0.0 : -std::sqrt(ss) / cfg_.s2_normalizer;
  out.score = out.s1 + cfg_.lambda * out.s2;
  return out;
}

ScoredLayout LayoutScorer::score(const Layout& l) const {
  ScoreWorkspace ws = make_workspace();
  return score(l, ws);
}

std::vector<ScoredLayout> LayoutScorer::score_batch_serial(
    std::span<const Layout> layouts) const {
  std::vector<ScoredLayout> out;
  out.reserve(layouts.size());
  ScoreWorkspace ws = make_workspace();
  for (const Layout& l : layouts) out.push_back(score(l, ws));
  return out;
}

std::vector<ScoredLayout> LayoutScorer::score_batch(
    std::span<const Layout> layouts) const {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(layouts.size());
  std::vector<ScoredLayout> out(layouts.size());
  std::exception_ptr error;
  std::ptrdiff_t error_index = n;
#pragma omp parallel
  {
    ScoreWorkspace ws = make_workspace();
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[i] = score(layouts[i], ws);
      } catch (...) {
#pragma omp critical(roomlayout_score_error)
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace roomlayout

#include "roomlayout/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roomlayout/render.hpp"

namespace roomlayout {

double pixel_error(const SegMap& pred, const SegMap& gt, const ScoreConfig& cfg) {
  return 100.0 * (1.0 - s1_matched_accuracy(pred, gt, cfg));
}

double pixel_error(const Layout& pred, const SegMap& gt, const ScoreConfig& cfg) {
  Layout l = pred;
  if (!(l.frame == Frame{gt.width(), gt.height()})) {
    l = scale_layout(pred, gt.width(), gt.height());
  }
  return pixel_error(render_seg(l), gt, cfg);
}

double corner_error(const Layout& pred, const Layout& gt, int W, int H) {
  const double diag = std::hypot(double(W), double(H));
  const std::vector<Point>& a = pred.points;
  const std::vector<Point>& b = gt.points;
  if (a.empty() && b.empty()) return 0.0;
  if (pred.type == gt.type && a.size() == b.size()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += distance(a[i], b[i]);
    return 100.0 * sum / (double(a.size()) * diag);
  }
  // Assign the smaller set into the larger one; at most 8 corners per side,
  // so a DP over subsets of the larger set is exact and cheap.
  const std::vector<Point>& small = a.size() <= b.size() ? a : b;
  const std::vector<Point>& large = a.size() <= b.size() ? b : a;
  const std::size_t n = small.size();
  const std::size_t m = large.size();
  const std::size_t full = std::size_t{1} << m;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full, inf);
  dp[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask] == inf) continue;
    const std::size_t i = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (i >= n) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      dp[next] = std::min(dp[next], dp[mask] + distance(small[i], large[j]));
    }
  }
  double best = inf;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == n) {
      best = std::min(best, dp[mask]);
    }
  }
  const double total = best + double(m - n) * diag;
  return 100.0 * total / (double(m) * diag);
}

double type_accuracy(const std::vector<EvalRecord>& records) {
  if (records.empty()) {
    throw LayoutError(ErrorCode::kInvalidArgument, "no records");
  }
  const auto correct = std::count_if(records.begin(), records.end(),
                                     [](const EvalRecord& r) { return r.type_correct; });
  return 100.0 * double(correct) / double(records.size());
}

double edge_error(const HeatMap& E, const HeatMap& gtE) {
  if (!E.same_shape(gtE)) {
    throw LayoutError(ErrorCode::kDimensionMismatch, "edge map sizes differ");
  }
  double ss = 0.0;
  for (std::size_t p = 0; p < E.size(); ++p) {
    const double d = E.values()[p] - gtE.values()[p];
    ss += d * d;
  }
  return std::sqrt(ss);
}

double semantic_error(const SegMap& M, const SegMap& gtM, const ScoreConfig& cfg) {
  return 100.0 * (1.0 - s1_matched_accuracy(M, gtM, cfg));
}

EvalRecord mean_record(const std::vector<EvalRecord>& records) {
  EvalRecord m;
  if (records.empty()) return m;
  for (const EvalRecord& r : records) {
    m.pixel_error_pct += r.pixel_error_pct;
    m.corner_error_pct += r.corner_error_pct;
    m.edge_error += r.edge_error;
    m.semantic_error_pct += r.semantic_error_pct;
  }
  const double n = double(records.size());
  m.pixel_error_pct /= n;
  m.corner_error_pct /= n;
  m.edge_error /= n;
  m.semantic_error_pct /= n;
  m.type_correct = type_accuracy(records) >= 50.0;
  return m;
}

}  // namespace roomlayout

#include "roomlayout/refine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace roomlayout {

NeighborSet neighbor_set(Point p, CornerKind kind, const Frame& frame) {
  NeighborSet ns{p, {p}};
  auto add = [&](double dx, double dy) {
    const Point q{p.x + dx, p.y + dy};
    if (q.x < 1.0 || q.x > frame.width || q.y < 1.0 || q.y > frame.height) return;
    if (std::find(ns.candidates.begin(), ns.candidates.end(), q) ==
        ns.candidates.end()) {
      ns.candidates.push_back(q);
    }
  };
  if (kind == CornerKind::kInterior) {
    add(0, -1);
    add(0, 1);
    add(-1, 0);
    add(1, 0);
    return ns;
  }
  const bool horizontal_edge = p.y <= 1.0 || p.y >= frame.height;
  const bool vertical_edge = p.x <= 1.0 || p.x >= frame.width;
  if (horizontal_edge) {
    add(-1, 0);
    add(1, 0);
  }
  if (vertical_edge) {
    add(0, -1);
    add(0, 1);
  }
  return ns;
}

NeighborSet neighbor_set(const Layout& l, int corner) {
  const LayoutType& t = l.topology();
  return neighbor_set(l.points[corner], t.corner_roles[corner].kind, l.frame);
}

Layout round_layout(const Layout& l) {
  Layout out = l;
  for (Point& p : out.points) {
    p.x = std::clamp(std::round(p.x), 1.0, double(l.frame.width));
    p.y = std::clamp(std::round(p.y), 1.0, double(l.frame.height));
  }
  return out;
}

ScoredLayout refine_layout(const Layout& l, const LayoutScorer& scorer,
                           ScoreWorkspace& ws, RefineTrace* trace) {
  RefineTrace local;
  RefineTrace& tr = trace ? *trace : local;
  tr = RefineTrace{};

  Layout start = l.frame == scorer.frame()
                     ? l
                     : scale_layout(l, scorer.frame().width, scorer.frame().height);
  ScoredLayout input = scorer.score(start, ws);
  ++tr.evaluations;
  const Layout cur = round_layout(start);
  ScoredLayout best;
  if (cur == start) {
    best = input;
  } else if (!validate(cur)) {
    tr.accepted_scores.push_back(input.score);
    return input;
  } else {
    best = scorer.score(cur, ws);
    ++tr.evaluations;
  }
  tr.accepted_scores.push_back(best.score);

  const int n = static_cast<int>(cur.points.size());
  bool improved = true;
  while (improved) {
    improved = false;
    ++tr.sweeps;
    for (int i = 0; i < n; ++i) {
      const NeighborSet ns = neighbor_set(best.layout, i);
      // The first candidate is the current position, which cannot improve.
      for (std::size_t c = 1; c < ns.candidates.size(); ++c) {
        Layout cand = best.layout;
        cand.points[i] = ns.candidates[c];
        if (!validate(cand)) continue;
        ScoredLayout s = scorer.score(cand, ws);
        ++tr.evaluations;
        if (s.score > best.score) {
          best = std::move(s);
          tr.accepted_scores.push_back(best.score);
          improved = true;
        }
      }
    }
  }
  // Rounding can cost up to half a pixel per corner; never return something
  // worse than the input.
  return input.score > best.score ? input : best;
}

ScoredLayout refine_layout(const Layout& l, const LayoutScorer& scorer,
                           RefineTrace* trace) {
  ScoreWorkspace ws = scorer.make_workspace();
  return refine_layout(l, scorer, ws, trace);
}

namespace {

OptimizeResult pick_best(std::vector<ScoredLayout> refined) {
  OptimizeResult r;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (i == 0 || refined[i].score > refined[r.best_index].score) r.best_index = i;
  }
  r.best = refined[r.best_index];
  r.refined = std::move(refined);
  return r;
}

void require_hypotheses(const std::vector<ScoredLayout>& h) {
  if (h.empty()) {
    throw LayoutError(ErrorCode::kEmptyHypotheses, "no hypotheses to refine");
  }
}

}  // namespace

OptimizeResult optimize_serial(const std::vector<ScoredLayout>& hypotheses,
                               const LayoutScorer& scorer) {
  require_hypotheses(hypotheses);
  ScoreWorkspace ws = scorer.make_workspace();
  std::vector<ScoredLayout> refined;
  refined.reserve(hypotheses.size());
  for (const ScoredLayout& h : hypotheses) {
    refined.push_back(refine_layout(h.layout, scorer, ws));
  }
  return pick_best(std::move(refined));
}

OptimizeResult optimize(const std::vector<ScoredLayout>& hypotheses,
                        const LayoutScorer& scorer) {
  require_hypotheses(hypotheses);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(hypotheses.size());
  std::vector<ScoredLayout> refined(hypotheses.size());
  std::exception_ptr error;
  std::ptrdiff_t error_index = n;
#pragma omp parallel
  {
    ScoreWorkspace ws = scorer.make_workspace();
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        refined[i] = refine_layout(hypotheses[i].layout, scorer, ws);
      } catch (...) {
#pragma omp critical(roomlayout_refine_error)
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return pick_best(std::move(refined));
}

}  // namespace roomlayout

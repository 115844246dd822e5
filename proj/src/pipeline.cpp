#include "roomlayout/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "roomlayout/io.hpp"

namespace roomlayout {

namespace fs = std::filesystem;

void PipelineConfig::check() const {
  if (no_sampling && no_pool) {
    throw LayoutError(ErrorCode::kEmptyHypotheses,
                      "both ray sampling and the layout pool are disabled");
  }
  render.check();
  score.check();
  sampling.check();
}

std::string PipelineConfig::describe() const {
  std::ostringstream os;
  os << "render.line_width_px = " << render.line_width_px << '\n'
     << "render.blur_sigma = " << render.blur_sigma << '\n'
     << "render.frame_w = " << render.frame_w << '\n'
     << "score.lambda = " << score.lambda << '\n'
     << "score.s2_normalizer = " << score.s2_normalizer << '\n'
     << "score.wall_only_matching = " << (score.wall_only_matching ? "true" : "false")
     << '\n'
     << "sampling.H = " << sampling.H << '\n'
     << "sampling.D = " << sampling.D << '\n'
     << "sampling.N = " << sampling.N << '\n'
     << "sampling.K1 = " << sampling.K1 << '\n'
     << "sampling.K2 = " << sampling.K2 << '\n'
     << "no_sampling = " << (no_sampling ? "true" : "false") << '\n'
     << "no_pool = " << (no_pool ? "true" : "false") << '\n'
     << "refine = " << (refine ? "true" : "false") << '\n';
  return os.str();
}

WorkingMaps to_working_frame(const HeatMap& E, const SegMap& M, int w) {
  if (E.width() != M.width() || E.height() != M.height()) {
    throw LayoutError(ErrorCode::kDimensionMismatch,
                      "edge map is " + std::to_string(E.width()) + "x" +
                          std::to_string(E.height()) + " but segmentation map is " +
                          std::to_string(M.width()) + "x" + std::to_string(M.height()));
  }
  if (E.width() < 1 || E.height() < 1) {
    throw LayoutError(ErrorCode::kDimensionMismatch, "empty input maps");
  }
  return {resize_cubic(E, w, w), resize_nearest(M, w, w)};
}

namespace {

bool recoverable_sampling_error(const LayoutError& e) {
  return e.code() == ErrorCode::kDegenerateVP || e.code() == ErrorCode::kEmptyHypotheses;
}

// Pool entries expressed in the scorer's frame.
LayoutPool pool_in_frame(const LayoutPool& pool, const Frame& frame) {
  if (pool.frame == frame) return pool;
  LayoutPool out{frame, {}};
  for (const Layout& l : pool.entries) {
    Layout s = scale_layout(l, frame.width, frame.height);
    if (validate(s)) out.entries.push_back(std::move(s));
  }
  return out;
}

}  // namespace

EstimateResult estimate_working(const LayoutScorer& scorer,
                                const std::optional<VanishingTriple>& vps,
                                const LayoutPool* pool, const PipelineConfig& cfg) {
  cfg.check();
  const bool use_pool = !cfg.no_pool && pool != nullptr && !pool->entries.empty();
  if (!cfg.no_sampling && !vps) {
    throw LayoutError(ErrorCode::kInvalidArgument,
                      "vanishing points are required unless sampling is disabled");
  }

  EstimateResult res;
  if (!cfg.no_sampling) {
    try {
      if (!vps->distinct()) {
        throw LayoutError(ErrorCode::kDegenerateVP, "vanishing points coincide");
      }
      const std::vector<Layout> composed =
          sample_layouts(scorer.edges(), *vps, cfg.sampling);
      res.composed = composed.size();
      if (composed.empty()) {
        throw LayoutError(ErrorCode::kEmptyHypotheses, "no layout could be composed");
      }
      res.ray_hypotheses = best_per_type(scorer.score_batch(composed), cfg.sampling.K1);
    } catch (const LayoutError& e) {
      if (!use_pool || !recoverable_sampling_error(e)) throw;
      res.sampling_note = e.what();
    }
  }
  if (use_pool) {
    const LayoutPool local = pool_in_frame(*pool, scorer.frame());
    if (!local.entries.empty()) {
      res.pool_hypotheses = generate_pool_hypotheses(scorer, local, cfg.sampling.K2);
    }
  }

  res.combined = combine_hypotheses(res.ray_hypotheses, res.pool_hypotheses);
  if (res.combined.empty()) {
    throw LayoutError(ErrorCode::kEmptyHypotheses, "no hypotheses were generated");
  }
  if (cfg.refine) {
    res.optimized = optimize(res.combined, scorer);
  } else {
    res.optimized.refined = res.combined;
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.combined.size(); ++i) {
      if (res.combined[i].score > res.combined[best].score) best = i;
    }
    res.optimized.best_index = best;
    res.optimized.best = res.combined[best];
  }
  res.working = res.optimized.best;
  res.layout = res.working.layout;
  return res;
}

EstimateResult estimate(const HeatMap& E, const SegMap& M,
                        const std::optional<VanishingTriple>& vps,
                        const LayoutPool* pool, const PipelineConfig& cfg) {
  cfg.check();
  const int w = cfg.render.frame_w;
  WorkingMaps wm = to_working_frame(E, M, w);
  ScoreConfig sc = cfg.score;
  const LayoutScorer scorer(std::move(wm.seg), std::move(wm.edges), sc, cfg.render);
  EstimateResult res = estimate_working(scorer, vps, pool, cfg);
  res.layout = scale_layout(res.working.layout, E.width(), E.height());
  return res;
}

// ---------------------------------------------------------------------------

EvalRecord evaluate_prediction(const Layout& pred, const Layout& gt,
                               const HeatMap* pred_edges, const SegMap* pred_seg,
                               const ScoreConfig& cfg, const RenderConfig& rcfg) {
  const int W = gt.frame.width;
  const int H = gt.frame.height;
  const Layout p = pred.frame == gt.frame ? pred : scale_layout(pred, W, H);

  Renderer renderer(rcfg);
  SegMap gt_seg;
  renderer.render_seg(faces_of(gt), gt.frame, gt_seg);
  HeatMap gt_edges;
  renderer.render_edges(gt, gt_edges);

  EvalRecord r;
  r.pixel_error_pct = pixel_error(p, gt_seg, cfg);
  r.corner_error_pct = corner_error(p, gt, W, H);
  r.type_correct = p.type == gt.type;

  HeatMap pe;
  if (pred_edges) {
    pe = pred_edges->width() == W && pred_edges->height() == H
             ? *pred_edges
             : resize_cubic(*pred_edges, W, H);
  } else {
    renderer.render_edges(p, pe);
  }
  r.edge_error = edge_error(pe, gt_edges);

  SegMap ps;
  if (pred_seg) {
    ps = pred_seg->width() == W && pred_seg->height() == H
             ? *pred_seg
             : resize_nearest(*pred_seg, W, H);
  } else {
    renderer.render_seg(faces_of(p), gt.frame, ps);
  }
  r.semantic_error_pct = semantic_error(ps, gt_seg, cfg);
  return r;
}

namespace {

// id -> ground-truth file.
std::map<std::string, fs::path> find_ground_truth(const fs::path& dir) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "gt.json")) {
      out[entry.path().filename().string()] = entry.path() / "gt.json";
    } else if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.emplace(entry.path().stem().string(), entry.path());
    }
  }
  return out;
}

std::map<std::string, fs::path> find_predictions(const fs::path& dir) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out[entry.path().stem().string()] = entry.path();
    }
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (const std::string& id : ids) s += (s.empty() ? "" : ", ") + id;
  return s;
}

}  // namespace

EvalReport run_eval(const fs::path& pred_dir, const fs::path& gt_dir,
                    const ScoreConfig& cfg, const RenderConfig& rcfg) {
  for (const fs::path& d : {pred_dir, gt_dir}) {
    if (!fs::is_directory(d)) {
      throw LayoutError(ErrorCode::kInvalidArgument, "not a directory: " + d.string());
    }
  }
  const auto gts = find_ground_truth(gt_dir);
  const auto preds = find_predictions(pred_dir);

  std::vector<std::string> no_gt, no_pred;
  for (const auto& [id, p] : preds) {
    if (!gts.count(id)) no_gt.push_back(id);
  }
  for (const auto& [id, p] : gts) {
    if (!preds.count(id)) no_pred.push_back(id);
  }
  if (!no_gt.empty() || !no_pred.empty()) {
    std::string msg = "unmatched ids:";
    if (!no_pred.empty()) msg += " missing prediction for " + join_ids(no_pred) + ";";
    if (!no_gt.empty()) msg += " missing ground truth for " + join_ids(no_gt) + ";";
    msg.pop_back();
    throw LayoutError(ErrorCode::kInvalidArgument, msg);
  }
  if (gts.empty()) {
    throw LayoutError(ErrorCode::kInvalidArgument, "no layouts found in " + gt_dir.string());
  }

  std::vector<std::string> ids;
  for (const auto& [id, p] : gts) ids.push_back(id);
  EvalReport report;
  report.rows.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::string& id = ids[i];
    const Layout gt = read_layout(gts.at(id));
    const Layout pred = read_layout(preds.at(id));
    std::optional<HeatMap> pe;
    std::optional<SegMap> ps;
    if (fs::exists(pred_dir / (id + ".edge.pgm"))) {
      pe = read_heatmap_pgm(pred_dir / (id + ".edge.pgm"));
    }
    if (fs::exists(pred_dir / (id + ".seg.pgm"))) {
      ps = read_segmap_pgm(pred_dir / (id + ".seg.pgm"));
    }
    report.rows[i] = {id, evaluate_prediction(pred, gt, pe ? &*pe : nullptr,
                                              ps ? &*ps : nullptr, cfg, rcfg)};
  }
  std::vector<EvalRecord> records;
  for (const EvalRow& r : report.rows) records.push_back(r.record);
  report.mean = mean_record(records);
  report.type_accuracy_pct = type_accuracy(records);
  return report;
}

std::string EvalReport::to_csv() const {
  std::string out = "id,pixel_error,corner_error,type_correct,edge_error,semantic_error\n";
  char buf[256];
  for (const EvalRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%d,%.6f,%.6f\n", r.id.c_str(),
                  r.record.pixel_error_pct, r.record.corner_error_pct,
                  r.record.type_correct ? 1 : 0, r.record.edge_error,
                  r.record.semantic_error_pct);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "mean,%.6f,%.6f,%.6f,%.6f,%.6f\n", mean.pixel_error_pct,
                mean.corner_error_pct, type_accuracy_pct / 100.0, mean.edge_error,
                mean.semantic_error_pct);
  out += buf;
  return out;
}

}  // namespace roomlayout

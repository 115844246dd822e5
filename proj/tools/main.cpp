// roomlayout command-line front end.
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roomlayout/io.hpp"
#include "roomlayout/pipeline.hpp"
#include "roomlayout/synth.hpp"

namespace fs = std::filesystem;
using namespace roomlayout;

namespace {

struct MapInputs {
  std::string edge;
  std::string seg;
  std::string stack;
  std::string stack_prefix;
  std::string scene;
  bool noisy = false;
};

void add_map_options(CLI::App* cmd, MapInputs& in) {
  cmd->add_option("--edge", in.edge, "Edge heat map (P5)");
  cmd->add_option("--seg", in.seg, "Segmentation map (P5, labels 1..5)");
  cmd->add_option("--stack", in.stack, "Semantic stack, five channels stacked vertically");
  cmd->add_option("--stack-prefix", in.stack_prefix,
                  "Semantic stack as <prefix>_1.pgm .. <prefix>_5.pgm");
  cmd->add_option("--scene", in.scene, "Scene directory written by `synth`");
  cmd->add_flag("--noisy", in.noisy, "Use the corrupted maps of --scene");
}

void add_sampling_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--H", cfg.sampling.H, "Sectors per vanishing point");
  cmd->add_option("--D", cfg.sampling.D, "Sector local-maximum margin");
  cmd->add_option("--N", cfg.sampling.N, "Rays per selected sector");
  cmd->add_option("--K1", cfg.sampling.K1, "Ray-sampled hypotheses kept");
  cmd->add_option("--K2", cfg.sampling.K2, "Pool hypotheses kept");
  cmd->add_flag("--no-sampling", cfg.no_sampling, "Disable ray sampling");
  cmd->add_flag("--no-pool", cfg.no_pool, "Disable the layout pool");
  cmd->add_flag("--no-refine", [&cfg](std::int64_t) { cfg.refine = false; },
                "Skip corner refinement");
}

void add_score_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--lambda", cfg.score.lambda, "Weight of the edge term");
  cmd->add_option("--line-width", cfg.render.line_width_px, "Rendered stroke width");
  cmd->add_option("--sigma", cfg.render.blur_sigma, "Edge blur sigma");
  cmd->add_flag("--all-labels", [&cfg](std::int64_t) { cfg.score.wall_only_matching = false; },
                "Match all five labels instead of walls only");
}

struct LoadedMaps {
  HeatMap edges;
  SegMap seg;
};

LoadedMaps load_maps(const MapInputs& in) {
  std::string edge = in.edge;
  std::string seg = in.seg;
  if (!in.scene.empty()) {
    const fs::path d(in.scene);
    if (edge.empty()) edge = (d / (in.noisy ? "edge_noisy.pgm" : "edge.pgm")).string();
    if (seg.empty() && in.stack.empty() && in.stack_prefix.empty()) {
      seg = (d / (in.noisy ? "seg_noisy.pgm" : "seg.pgm")).string();
    }
  }
  if (edge.empty()) {
    throw LayoutError(ErrorCode::kInvalidArgument, "an edge map is required (--edge or --scene)");
  }
  const int sources = !seg.empty() + !in.stack.empty() + !in.stack_prefix.empty();
  if (sources != 1) {
    throw LayoutError(ErrorCode::kInvalidArgument,
                      "give exactly one of --seg, --stack, --stack-prefix");
  }
  LoadedMaps m;
  m.edges = read_heatmap_pgm(edge);
  if (!seg.empty()) {
    m.seg = read_segmap_pgm(seg);
  } else if (!in.stack.empty()) {
    m.seg = argmax_labels(read_stack_pgm(in.stack));
  } else {
    m.seg = argmax_labels(read_stack_files(in.stack_prefix));
  }
  if (m.edges.width() != m.seg.width() || m.edges.height() != m.seg.height()) {
    throw LayoutError(ErrorCode::kDimensionMismatch,
                      "edge map and semantic input differ in size");
  }
  return m;
}

// max(E, strokes of l) in the frame of E.
HeatMap overlay(const HeatMap& E, const Layout& l, int line_width) {
  const Layout s = l.frame == Frame{E.width(), E.height()}
                       ? l
                       : scale_layout(l, E.width(), E.height());
  HeatMap out = stroke_mask(s, line_width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = std::max(out.values()[i], E.values()[i]);
  }
  return out;
}

void set_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  MapInputs maps;
  std::string vps;
  std::string pool;
  std::string out;
  std::string overlay;
  std::string scenes;
  std::string out_dir;
  bool verbose = false;
};

struct Prepared {
  LayoutPool pool;
  bool has_pool = false;
};

void run_single(const EstimateArgs& a, const PipelineConfig& cfg, const Prepared& prep) {
  const LoadedMaps m = load_maps(a.maps);
  std::optional<VanishingTriple> vps;
  std::string vp_path = a.vps;
  if (vp_path.empty() && !a.maps.scene.empty()) {
    vp_path = (fs::path(a.maps.scene) / "vps.json").string();
  }
  if (!cfg.no_sampling) {
    if (vp_path.empty()) {
      throw LayoutError(ErrorCode::kInvalidArgument,
                        "a vanishing point file is required unless --no-sampling");
    }
    vps = read_vps(vp_path);
  }
  const EstimateResult r =
      estimate(m.edges, m.seg, vps, prep.has_pool ? &prep.pool : nullptr, cfg);
  if (!r.sampling_note.empty()) {
    std::cerr << "warning: ray sampling skipped: " << r.sampling_note << '\n';
  }
  if (a.verbose) {
    std::cerr << "composed " << r.composed << ", ray hypotheses " << r.ray_hypotheses.size()
              << ", pool hypotheses " << r.pool_hypotheses.size() << ", score "
              << r.working.score << " (s1 " << r.working.s1 << ", s2 " << r.working.s2
              << ")\n";
  }
  if (a.out.empty()) {
    std::cout << layout_to_json(r.layout) << '\n';
  } else {
    write_layout(a.out, r.layout);
  }
  if (!a.overlay.empty()) {
    const HeatMap ov = overlay(m.edges, r.layout, cfg.render.line_width_px);
    write_heatmap_pgm(a.overlay, ov);
  }
}

// Every subdirectory of a.scenes is one image; results go to
// out_dir/<id>.json and out_dir/<id>.overlay.pgm.
int run_batch(const EstimateArgs& a, const PipelineConfig& cfg, const Prepared& prep) {
  if (a.out_dir.empty()) {
    throw LayoutError(ErrorCode::kInvalidArgument, "--scenes needs --out-dir");
  }
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(a.scenes)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  fs::create_directories(a.out_dir);
  std::vector<std::string> errors(dirs.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const std::string id = dirs[i].filename().string();
    EstimateArgs one = a;
    one.maps.scene = dirs[i].string();
    one.out = (fs::path(a.out_dir) / (id + ".json")).string();
    one.overlay = (fs::path(a.out_dir) / (id + ".overlay.pgm")).string();
    one.verbose = false;
    try {
      run_single(one, cfg, prep);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  int failed = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (errors[i].empty()) continue;
    ++failed;
    std::cerr << "error: " << dirs[i].filename().string() << ": " << errors[i] << '\n';
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Room layout estimation from edge and semantic maps"};
  app.require_subcommand(0, 1);
  PipelineConfig cfg;
  bool show_config = false;
  int jobs = 0;
  app.add_flag("--show-config", show_config, "Print the effective configuration and exit");
  app.add_option("--jobs", jobs, "Worker threads (default: OpenMP default)");

  // estimate
  EstimateArgs est;
  CLI::App* c_est = app.add_subcommand("estimate", "Estimate the layout of one or many images");
  add_map_options(c_est, est.maps);
  add_sampling_options(c_est, cfg);
  add_score_options(c_est, cfg);
  c_est->add_option("--vps", est.vps, "Vanishing points (JSON, working frame)");
  c_est->add_option("--pool", est.pool, "Layout pool (JSON)");
  c_est->add_option("-o,--out", est.out, "Output layout JSON (stdout if omitted)");
  c_est->add_option("--overlay", est.overlay, "Write max(E, layout strokes) as P5");
  c_est->add_option("--scenes", est.scenes, "Directory of scene directories (batch)");
  c_est->add_option("--out-dir", est.out_dir, "Batch output directory");
  c_est->add_flag("-v,--verbose", est.verbose, "Report hypothesis counts and score");
  c_est->add_flag("--show-config", show_config, "Print the effective configuration and exit");
  c_est->add_option("--jobs", jobs, "Worker threads");

  // refine
  MapInputs ref_maps;
  std::string ref_layout, ref_out;
  CLI::App* c_ref = app.add_subcommand("refine", "Refine a layout against maps");
  add_map_options(c_ref, ref_maps);
  add_score_options(c_ref, cfg);
  c_ref->add_option("--layout", ref_layout, "Input layout JSON")->required();
  c_ref->add_option("-o,--out", ref_out, "Output layout JSON (stdout if omitted)");

  // score
  MapInputs sc_maps;
  std::string sc_layout;
  CLI::App* c_sc = app.add_subcommand("score", "Score a layout against maps");
  add_map_options(c_sc, sc_maps);
  add_score_options(c_sc, cfg);
  c_sc->add_option("--layout", sc_layout, "Layout JSON")->required();

  // eval
  std::string ev_pred, ev_gt, ev_out;
  CLI::App* c_ev = app.add_subcommand("eval", "Evaluate predictions against ground truth");
  c_ev->add_option("--pred", ev_pred, "Prediction directory")->required();
  c_ev->add_option("--gt", ev_gt, "Ground-truth directory")->required();
  c_ev->add_option("-o,--out", ev_out, "CSV report (stdout if omitted)");
  c_ev->add_flag("--all-labels", [&cfg](std::int64_t) { cfg.score.wall_only_matching = false; },
                 "Match all five labels instead of walls only");

  // synth
  SynthConfig syn;
  int syn_count = 1;
  int syn_type = 0;
  std::string syn_out;
  CLI::App* c_syn = app.add_subcommand("synth", "Write synthetic scenes");
  c_syn->add_option("--seed", syn.seed, "Base seed; scene i uses seed + i");
  c_syn->add_option("--count", syn_count, "Number of scenes")->check(CLI::PositiveNumber);
  c_syn->add_option("--out", syn_out, "Output directory")->required();
  c_syn->add_option("--type", syn_type, "Fix the layout type (1..11)");
  c_syn->add_option("--noise", syn.noise_sigma, "Edge noise sigma");
  c_syn->add_option("--occluders", syn.occluder_count, "Occluder count");
  c_syn->add_option("--dropout", syn.edge_dropout_frac, "Edge dropout fraction");

  // pool-build
  SynthConfig pool_cfg;
  int pool_count = 4000;
  std::string pool_ingest, pool_out;
  bool zero_based = false;
  CLI::App* c_pool = app.add_subcommand("pool-build", "Build a layout pool");
  c_pool->add_option("--count", pool_count, "Synthetic layouts to generate")
      ->check(CLI::PositiveNumber);
  c_pool->add_option("--seed", pool_cfg.seed, "Base seed");
  c_pool->add_option("--ingest", pool_ingest, "Annotation file to convert instead");
  c_pool->add_flag("--zero-based", zero_based, "Annotation type ids are 0..10");
  c_pool->add_option("-o,--out", pool_out, "Output pool JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    set_jobs(jobs);
    if (show_config) {
      std::cout << cfg.describe();
      const SynthConfig d;
      std::cout << "synth.noise_sigma = " << d.noise_sigma << '\n'
                << "synth.occluder_count = " << d.occluder_count << '\n'
                << "synth.occluder_max_frac = " << d.occluder_max_frac << '\n'
                << "synth.edge_dropout_frac = " << d.edge_dropout_frac << '\n'
                << "jobs = " << (jobs > 0 ? jobs : omp_get_max_threads()) << '\n';
      return 0;
    }

    if (*c_est) {
      cfg.check();
      Prepared prep;
      if (!cfg.no_pool && !est.pool.empty()) {
        prep.pool = read_pool(est.pool);
        prep.has_pool = true;
      } else if (cfg.no_sampling) {
        throw LayoutError(ErrorCode::kEmptyHypotheses,
                          "ray sampling is disabled and no --pool was given");
      }
      if (!est.scenes.empty()) return run_batch(est, cfg, prep);
      run_single(est, cfg, prep);
      return 0;
    }

    if (*c_ref || *c_sc) {
      const MapInputs& in = *c_ref ? ref_maps : sc_maps;
      const LoadedMaps m = load_maps(in);
      const Layout l = read_layout(*c_ref ? ref_layout : sc_layout);
      const int w = cfg.render.frame_w;
      WorkingMaps wm = to_working_frame(m.edges, m.seg, w);
      const LayoutScorer scorer(std::move(wm.seg), std::move(wm.edges), cfg.score,
                                cfg.render);
      const Layout working = scale_layout(l, w, w);
      if (*c_sc) {
        const ScoredLayout s = scorer.score(working);
        std::printf("score=%.9f s1=%.9f s2=%.9f\n", s.score, s.s1, s.s2);
        return 0;
      }
      RefineTrace trace;
      const ScoredLayout r = refine_layout(working, scorer, &trace);
      std::cerr << "refined in " << trace.sweeps << " sweeps, score "
                << trace.accepted_scores.front() << " -> " << r.score << '\n';
      const Layout out = scale_layout(r.layout, l.frame.width, l.frame.height);
      if (ref_out.empty()) {
        std::cout << layout_to_json(out) << '\n';
      } else {
        write_layout(ref_out, out);
      }
      return 0;
    }

    if (*c_ev) {
      const EvalReport rep = run_eval(ev_pred, ev_gt, cfg.score, cfg.render);
      if (ev_out.empty()) {
        std::cout << rep.to_csv();
      } else {
        write_file_atomic(ev_out, rep.to_csv());
      }
      std::fprintf(stderr, "%zu images, type accuracy %.2f%%\n", rep.rows.size(),
                   rep.type_accuracy_pct);
      return 0;
    }

    if (*c_syn) {
      syn.check();
      if (syn_type != 0 && (syn_type < 1 || syn_type > kNumLsunTypes)) {
        throw LayoutError(ErrorCode::kInvalidArgument, "--type must be in 1..11");
      }
      const RenderConfig rcfg;
      for (int i = 0; i < syn_count; ++i) {
        SynthConfig c = syn;
        c.seed = syn.seed + static_cast<std::uint64_t>(i);
        const Scene s = syn_type ? sample_scene_of_type(c, syn_type) : sample_scene(c);
        const SceneMaps clean = clean_maps(s.layout, rcfg);
        const SceneMaps noisy = corrupt_maps(clean.edges, clean.seg, c);
        char name[32];
        std::snprintf(name, sizeof name, "%06d", i);
        const fs::path d = fs::path(syn_out) / name;
        fs::create_directories(d);
        write_layout(d / "gt.json", s.layout);
        write_vps(d / "vps.json", s.vps);
        write_heatmap_pgm(d / "edge.pgm", clean.edges);
        write_segmap_pgm(d / "seg.pgm", clean.seg);
        write_heatmap_pgm(d / "edge_noisy.pgm", noisy.edges);
        write_segmap_pgm(d / "seg_noisy.pgm", noisy.seg);
      }
      return 0;
    }

    if (*c_pool) {
      LayoutPool pool;
      if (!pool_ingest.empty()) {
        pool = ingest_layouts(read_annotations(pool_ingest, zero_based), kDefaultFrameSize);
        if (pool.entries.empty()) {
          throw LayoutError(ErrorCode::kEmptyPool, "no valid layouts in " + pool_ingest);
        }
      } else {
        pool = build_pool(pool_count, pool_cfg);
      }
      write_pool(pool_out, pool);
      std::fprintf(stderr, "%zu layouts\n", pool.entries.size());
      return 0;
    }

    std::cout << app.help();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

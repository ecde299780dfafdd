// jumpsync: spatiotemporal synchronization of two jump recordings.
//
//   jumpsync sync --config run.json
//   jumpsync detect --video a/%06d.ppm --reference ref.ppm --roi 100,80,220,80
//   jumpsync homography --src ... --dst ...
//   jumpsync warp --input b/%06d.ppm --homography h.json --output bw/%06d.ppm
//   jumpsync compose --a a --b bw --base-a 50 --base-b 40 --output out
//   jumpsync synth --seed 1 --out scene
//   jumpsync eval trials.json
//
// Exit status: 0 ok, 2 configuration, 3 detection, 4 geometry, 5 I/O.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jumpsync/compose.hpp"
#include "jumpsync/error.hpp"
#include "jumpsync/evalmetrics.hpp"
#include "jumpsync/frame_io.hpp"
#include "jumpsync/geometry.hpp"
#include "jumpsync/pipeline.hpp"
#include "jumpsync/synthetic.hpp"
#include "jumpsync/temporal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jumpsync;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kDetection = 3, kGeometry = 4, kIo = 5 };

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError("malformed number '" + token + "' in " + what);
    }
  }
  return out;
}

Rgb parse_rgb_flag(const std::string& text) {
  const auto v = parse_numbers(text, "color");
  if (v.size() != 3) throw ConfigError("color must be r,g,b");
  Rgb c;
  std::uint8_t* ch[3] = {&c.r, &c.g, &c.b};
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i] < 0 || v[i] > 255 || v[i] != std::floor(v[i])) throw ConfigError("color channels must be integers in [0, 255]");
    *ch[i] = static_cast<std::uint8_t>(v[i]);
  }
  return c;
}

// "x,y;x,y;x,y;x,y" in corner order.
Corners parse_corners_flag(const std::string& text) {
  Corners c{};
  std::istringstream in(text);
  std::string pair;
  std::size_t n = 0;
  while (std::getline(in, pair, ';')) {
    const auto v = parse_numbers(pair, "corner list");
    if (v.size() != 2 || n >= 4) throw ConfigError("corners must be four x,y pairs separated by ';'");
    c[n++] = {v[0], v[1]};
  }
  if (n != 4) throw ConfigError("corners must be four x,y pairs separated by ';'");
  return c;
}

json homography_json(const Homography& h) { return {{"h", h.entries()}}; }

Homography read_homography(const fs::path& path) {
  const json doc = read_json(path);
  if (!doc.contains("h") || !doc.at("h").is_array() || doc.at("h").size() != 9) {
    throw ConfigError(path.string() + ": expected {\"h\": [9 numbers]}");
  }
  return Homography::from_entries(doc.at("h").get<std::array<double, 9>>());
}

void print_homography(const Homography& h) {
  for (int r = 0; r < 3; ++r) {
    std::printf("%.17g %.17g %.17g\n", h(r, 0), h(r, 1), h(r, 2));
  }
}

json truth_json(const Scenario& s) {
  json corners_a = json::array();
  json corners_b = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    corners_a.push_back({s.stand_corners_a[i].x, s.stand_corners_a[i].y});
    corners_b.push_back({s.stand_corners_b[i].x, s.stand_corners_b[i].y});
  }
  return {{"seed", s.seed},
          {"width", s.width},
          {"height", s.height},
          {"fps", s.fps.to_string()},
          {"n_frames", s.n_frames},
          {"event_frame_a", s.event_frame_a},
          {"event_frame_b", s.event_frame_b},
          {"stand_corners_a", corners_a},
          {"stand_corners_b", corners_b},
          {"true_h", s.true_h.entries()},
          {"noise_sigma", s.noise_sigma},
          {"disc_radius", s.disc_radius},
          {"disc_speed", s.disc_speed}};
}

int report_error(const std::exception& e, int code) {
  std::cerr << "jumpsync: " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatiotemporal synchronization of two jump recordings"};
  app.require_subcommand(1);

  // sync
  auto* sync = app.add_subcommand("sync", "Run the full pipeline from a JSON config");
  std::string sync_config;
  std::string sync_mode;
  std::string sync_output;
  std::optional<double> sync_alpha;
  sync->add_option("--config,config", sync_config, "Pipeline config (JSON)")->required();
  sync->add_option("--mode", sync_mode, "Override composite mode: side_by_side | overlay");
  sync->add_option("--output", sync_output, "Override output path pattern");
  sync->add_option("--alpha", sync_alpha, "Override overlay weight of clip B");

  // detect
  auto* detect = app.add_subcommand("detect", "Detect the base frame of one clip");
  std::string det_video, det_reference, det_roi, det_csv, det_config, det_view = "a", det_fps = "120";
  int det_thickness = kDefaultRoiThickness;
  double det_threshold = kDefaultThreshold;
  detect->add_option("--config", det_config, "Take video, reference, ROI and threshold from a pipeline config");
  detect->add_option("--view", det_view, "Which view of the config to use (a|b)")->check(CLI::IsMember({"a", "b"}));
  detect->add_option("--video", det_video, "Frame sequence pattern");
  detect->add_option("--reference", det_reference, "Athlete-free reference frame (PPM)");
  detect->add_option("--roi", det_roi, "ROI segment x0,y0,x1,y1 in pixel-index coordinates");
  detect->add_option("--thickness", det_thickness, "ROI thickness (odd)");
  detect->add_option("--threshold", det_threshold, "Luma difference threshold");
  detect->add_option("--fps", det_fps, "Frame rate (e.g. 120 or 120000/1001)");
  detect->add_option("--signal-csv", det_csv, "Write the per-frame difference signal here");

  // homography
  auto* homog = app.add_subcommand("homography", "Estimate the homography between corner sets");
  std::string hom_src, hom_dst, hom_out, hom_config;
  homog->add_option("--src", hom_src, "Source corners x,y;x,y;x,y;x,y");
  homog->add_option("--dst", hom_dst, "Destination corners x,y;x,y;x,y;x,y");
  homog->add_option("--config", hom_config, "Use corners_b -> corners_a from a pipeline config");
  homog->add_option("--output", hom_out, "Write {\"h\": [...]} here");

  // warp
  auto* warp = app.add_subcommand("warp", "Warp a frame sequence by a homography");
  std::string warp_in, warp_h, warp_out, warp_fill = "0,0,0", warp_fps = "120";
  std::optional<int> warp_w, warp_hgt;
  warp->add_option("--input", warp_in, "Input sequence pattern")->required();
  warp->add_option("--homography", warp_h, "Homography JSON ({\"h\": [...]})")->required();
  warp->add_option("--output", warp_out, "Output sequence pattern")->required();
  warp->add_option("--width", warp_w, "Output width (default: input width)");
  warp->add_option("--height", warp_hgt, "Output height (default: input height)");
  warp->add_option("--fill", warp_fill, "Fill color r,g,b");
  warp->add_option("--fps", warp_fps, "Frame rate");

  // compose
  auto* comp = app.add_subcommand("compose", "Pair and composite two aligned clips");
  std::string comp_a, comp_b, comp_out, comp_mode = "overlay", comp_pad = "0,0,0", comp_fps = "120";
  int comp_base_a = 0, comp_base_b = 0;
  std::optional<int> comp_pre, comp_post;
  double comp_alpha = 0.5;
  comp->add_option("--a", comp_a, "Clip A pattern (reference view)")->required();
  comp->add_option("--b", comp_b, "Clip B pattern (already viewpoint-corrected)")->required();
  comp->add_option("--base-a", comp_base_a, "Base frame of A")->required();
  comp->add_option("--base-b", comp_base_b, "Base frame of B")->required();
  comp->add_option("--pre", comp_pre, "Frames before the base (default 2 s)");
  comp->add_option("--post", comp_post, "Frames after the base (default 2 s)");
  comp->add_option("--mode", comp_mode, "side_by_side | overlay");
  comp->add_option("--alpha", comp_alpha, "Overlay weight of clip B");
  comp->add_option("--pad", comp_pad, "Pad color r,g,b");
  comp->add_option("--fps", comp_fps, "Frame rate");
  comp->add_option("--output", comp_out, "Output sequence pattern")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic two-view scene with ground truth");
  std::uint64_t syn_seed = 1;
  std::string syn_out, syn_fps = "120";
  ScenarioOptions syn_opts;
  std::optional<int> syn_event_a, syn_event_b;
  synth->add_option("--seed", syn_seed, "Random seed");
  synth->add_option("--out", syn_out, "Output directory")->required();
  synth->add_option("--noise", syn_opts.noise_sigma, "Gaussian noise sigma in luma levels");
  synth->add_option("--frames", syn_opts.n_frames, "Frames per clip");
  synth->add_option("--width", syn_opts.width, "Raster width");
  synth->add_option("--height", syn_opts.height, "Raster height");
  synth->add_option("--fps", syn_fps, "Frame rate");
  synth->add_option("--event-a", syn_event_a, "Override the event frame of view A");
  synth->add_option("--event-b", syn_event_b, "Override the event frame of view B");

  // eval
  auto* eval = app.add_subcommand("eval", "Summarize base-frame errors over trials");
  std::string eval_path;
  eval->add_option("trials", eval_path, "JSON list of {detected_a, detected_b, truth_a, truth_b}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*sync) {
      PipelineConfig config = load_pipeline_config(sync_config);
      if (!sync_mode.empty()) config.mode = parse_composite_mode(sync_mode);
      if (!sync_output.empty()) config.output = sync_output;
      if (sync_alpha) {
        if (!(*sync_alpha >= 0.0 && *sync_alpha <= 1.0)) throw ConfigError("--alpha must lie in [0, 1]");
        config.alpha = *sync_alpha;
      }
      const RunReport report = run_pipeline(config);
      if (report.pad_a > 0 || report.pad_b > 0) {
        std::cerr << "jumpsync: padded " << report.pad_a << " frame(s) of A and " << report.pad_b
                  << " frame(s) of B at the clip edges\n";
      }
      std::cout << "base_a " << report.base_a << "\nbase_b " << report.base_b << "\noffset "
                << report.offset << "\nframes " << report.frames_written << "\nreport "
                << config.report_path().string() << '\n';
    } else if (*detect) {
      std::optional<Frame> reference;
      LineRoi roi;
      double threshold = det_threshold;
      FrameRate fps = FrameRate::parse(det_fps);
      std::string video = det_video;
      if (!det_config.empty()) {
        const PipelineConfig config = load_pipeline_config(det_config);
        const bool a = det_view == "a";
        video = a ? config.video_a : config.video_b;
        roi = a ? config.roi_a : config.roi_b;
        const auto& ref = a ? config.reference_a : config.reference_b;
        if (ref) reference = read_ppm(*ref);
        fps = config.fps;
        threshold = detect->count("--threshold") ? det_threshold : config.threshold;
      } else {
        if (det_video.empty() || det_roi.empty()) throw ConfigError("detect needs --video and --roi, or --config");
        const auto v = parse_numbers(det_roi, "--roi");
        if (v.size() != 4) throw ConfigError("--roi must be x0,y0,x1,y1");
        roi = {{v[0], v[1]}, {v[2], v[3]}, det_thickness};
        if (!det_reference.empty()) reference = read_ppm(det_reference);
      }
      const Clip clip = read_frame_sequence(video, fps);
      const BaseFrameResult result = detect_view(clip, reference, roi, threshold);
      if (!det_csv.empty()) write_signal_csv(result.signal, det_csv);
      std::cout << "base_index " << result.base_index << '\n';
    } else if (*homog) {
      Corners src{}, dst{};
      if (!hom_config.empty()) {
        const PipelineConfig config = load_pipeline_config(hom_config);
        src = config.corners_b;
        dst = config.corners_a;
      } else {
        if (hom_src.empty() || hom_dst.empty()) throw ConfigError("homography needs --src and --dst, or --config");
        src = parse_corners_flag(hom_src);
        dst = parse_corners_flag(hom_dst);
      }
      const Homography h = homography_from_corners(src, dst);
      print_homography(h);
      if (!hom_out.empty()) write_json(homography_json(h), hom_out);
    } else if (*warp) {
      const Homography h = read_homography(warp_h);
      const Clip clip = read_frame_sequence(warp_in, FrameRate::parse(warp_fps));
      const Clip out = warp_clip(clip, h, warp_w.value_or(clip.width()), warp_hgt.value_or(clip.height()),
                                 parse_rgb_flag(warp_fill));
      write_frame_sequence(out, warp_out);
      std::cout << "frames " << out.size() << '\n';
    } else if (*comp) {
      const FrameRate fps = FrameRate::parse(comp_fps);
      const Clip a = read_frame_sequence(comp_a, fps);
      const Clip b = read_frame_sequence(comp_b, fps);
      const int pre = comp_pre.value_or(fps.frames_for(kDefaultWindowSeconds));
      const int post = comp_post.value_or(fps.frames_for(kDefaultWindowSeconds));
      const SyncPlan plan = make_sync_plan(comp_base_a, comp_base_b, pre, post);
      if (!(comp_alpha >= 0.0 && comp_alpha <= 1.0)) throw ConfigError("--alpha must lie in [0, 1]");
      const CompositeSpec spec{parse_composite_mode(comp_mode), comp_alpha, parse_rgb_flag(comp_pad)};
      const RenderResult r = render(a, b, plan, spec);
      write_frame_sequence(r.clip, comp_out);
      write_json(composite_sidecar(plan, spec, r.pad_a, r.pad_b),
                 PathPattern(comp_out).directory() / "composite.json");
      if (r.pad_a > 0 || r.pad_b > 0) {
        std::cerr << "jumpsync: padded " << r.pad_a << " frame(s) of A and " << r.pad_b << " frame(s) of B\n";
      }
      std::cout << "frames " << r.clip.size() << '\n';
    } else if (*synth) {
      syn_opts.fps = FrameRate::parse(syn_fps);
      Scenario s = make_scenario(syn_seed, syn_opts);
      if (syn_event_a) s.event_frame_a = *syn_event_a;
      if (syn_event_b) s.event_frame_b = *syn_event_b;
      const SyntheticPair pair = generate(s);
      const fs::path out(syn_out);
      write_frame_sequence(pair.clip_a, (out / "a" / "%06d.ppm").string());
      write_frame_sequence(pair.clip_b, (out / "b" / "%06d.ppm").string());
      write_ppm(pair.reference_a, out / "reference_a.ppm");
      write_ppm(pair.reference_b, out / "reference_b.ppm");
      write_json(truth_json(s), out / "truth.json");

      PipelineConfig config;
      config.video_a = (out / "a" / "%06d.ppm").string();
      config.video_b = (out / "b" / "%06d.ppm").string();
      config.fps = s.fps;
      config.reference_a = (out / "reference_a.ppm").string();
      config.reference_b = (out / "reference_b.ppm").string();
      config.roi_a = s.roi_a();
      config.roi_b = s.roi_b();
      config.corners_a = s.stand_corners_a;
      config.corners_b = s.stand_corners_b;
      config.output = (out / "out" / "%06d.ppm").string();
      // The default two-second window is longer than a short synthetic clip.
      const int window = std::max(0, std::min(std::min(s.event_frame_a, s.event_frame_b),
                                              s.n_frames - 1 - std::max(s.event_frame_a, s.event_frame_b)));
      config.pre = std::min(window, config.pre_frames());
      config.post = std::min(window, config.post_frames());
      write_json(to_json(config), out / "config.json");
      std::cout << "event_frame_a " << s.event_frame_a << "\nevent_frame_b " << s.event_frame_b << '\n';
    } else if (*eval) {
      const json doc = read_json(eval_path);
      if (!doc.is_array()) throw ConfigError(eval_path + ": expected a JSON list of trials");
      std::vector<TrialEval> trials;
      for (const auto& t : doc) {
        try {
          trials.push_back({t.at("detected_a").get<int>(), t.at("detected_b").get<int>(),
                            t.at("truth_a").get<int>(), t.at("truth_b").get<int>()});
        } catch (const json::exception& e) {
          throw ConfigError(eval_path + ": malformed trial: " + e.what());
        }
      }
      const EvalSummary s = summarize(trials);
      std::printf("trial,detected_a,detected_b,truth_a,truth_b,difference\n");
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        std::printf("%zu,%d,%d,%d,%d,%g\n", i, t.detected_a, t.detected_b, t.truth_a, t.truth_b,
                    s.per_trial[i]);
      }
      std::printf("%.3f ± %.3f\n", s.mean, s.sd);
    }
  } catch (const ConfigError& e) {
    return report_error(e, kConfig);
  } catch (const DetectionError& e) {
    return report_error(e, kDetection);
  } catch (const GeometryError& e) {
    return report_error(e, kGeometry);
  } catch (const IoError& e) {
    return report_error(e, kIo);
  } catch (const fs::filesystem_error& e) {
    return report_error(e, kIo);
  } catch (const std::exception& e) {
    return report_error(e, kOther);
  }
  return kOk;
}

#include "jumpsync/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <set>

#include "jumpsync/error.hpp"
#include "jumpsync/frame_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace jumpsync {

namespace {

const std::set<std::string> kConfigKeys = {
    "video_a", "video_b",  "fps",   "reference_a", "reference_b",       "roi_a",
    "roi_b",   "corners_a", "corners_b", "threshold", "pre",            "post",
    "mode",    "alpha",    "fill",  "warp_side_by_side", "output",      "report",
    "signal_csv_a", "signal_csv_b"};

[[noreturn]] void config_error(const std::string& what) { throw ConfigError("config: " + what); }

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) config_error(std::string("missing required field '") + key + "'");
  return doc.at(key);
}

std::string get_string(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_string()) config_error(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  if (!doc.at(key).is_string()) config_error(std::string("'") + key + "' must be a string");
  return doc.at(key).get<std::string>();
}

double get_number(const json& v, const std::string& what) {
  if (!v.is_number()) config_error("'" + what + "' must be a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) config_error("'" + what + "' must be an integer");
  return v.get<int>();
}

Point2 parse_point(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) config_error("'" + what + "' must be an [x, y] pair");
  return {get_number(v[0], what + ".x"), get_number(v[1], what + ".y")};
}

Corners parse_corners(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_array() || v.size() != 4) {
    config_error(std::string("'") + key +
                 "' must list exactly 4 corners (top-left, top-right, bottom-right, bottom-left)");
  }
  Corners c{};
  for (std::size_t i = 0; i < 4; ++i) {
    c[i] = parse_point(v[i], std::string(key) + "[" + std::to_string(i) + "]");
  }
  return c;
}

LineRoi parse_roi(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_object()) config_error(std::string("'") + key + "' must be an object");
  LineRoi roi;
  roi.p0 = parse_point(require(v, "p0"), std::string(key) + ".p0");
  roi.p1 = parse_point(require(v, "p1"), std::string(key) + ".p1");
  roi.thickness = v.contains("thickness") ? get_int(v.at("thickness"), std::string(key) + ".thickness")
                                          : kDefaultRoiThickness;
  if (roi.thickness < 1 || roi.thickness % 2 == 0) {
    config_error(std::string("'") + key + ".thickness' must be an odd integer >= 1");
  }
  if (roi.p0 == roi.p1) config_error(std::string("'") + key + "' endpoints coincide");
  return roi;
}

Rgb parse_rgb(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 3) config_error(std::string("'") + key + "' must be [r, g, b]");
  std::array<std::uint8_t, 3> c{};
  for (std::size_t i = 0; i < 3; ++i) {
    const int x = get_int(v[i], key);
    if (x < 0 || x > 255) config_error(std::string("'") + key + "' channels must lie in [0, 255]");
    c[i] = static_cast<std::uint8_t>(x);
  }
  return {c[0], c[1], c[2]};
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json roi_json(const LineRoi& roi) {
  return {{"p0", point_json(roi.p0)}, {"p1", point_json(roi.p1)}, {"thickness", roi.thickness}};
}

json corners_json(const Corners& c) {
  json out = json::array();
  for (const auto& p : c) out.push_back(point_json(p));
  return out;
}

// Re-raises the in-flight library error with the stage name prefixed,
// keeping its type so the exit status is preserved.
[[noreturn]] void rethrow_in_stage(const std::string& stage) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(stage + ": " + e.what());
  } catch (const DetectionError& e) {
    throw DetectionError(stage + ": " + e.what());
  } catch (const GeometryError& e) {
    throw GeometryError(stage + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(stage + ": " + e.what());
  }
}

class StageTimer {
 public:
  explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}

  template <typename F>
  auto run(const std::string& stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
        body();
        record(stage, start);
      } else {
        auto result = body();
        record(stage, start);
        return result;
      }
    } catch (const Error&) {
      rethrow_in_stage(stage);
    }
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
    sink_[stage] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  std::map<std::string, double>& sink_;
};

}  // namespace

int PipelineConfig::pre_frames() const {
  return pre.value_or(fps.frames_for(kDefaultWindowSeconds));
}

int PipelineConfig::post_frames() const {
  return post.value_or(fps.frames_for(kDefaultWindowSeconds));
}

fs::path PipelineConfig::report_path() const {
  if (report) return *report;
  return PathPattern(output).directory() / "report.json";
}

fs::path PipelineConfig::sidecar_path() const {
  return PathPattern(output).directory() / "composite.json";
}

PipelineConfig parse_pipeline_config(const json& doc) {
  if (!doc.is_object()) config_error("document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kConfigKeys.count(key)) config_error("unknown field '" + key + "'");
  }
  PipelineConfig c;
  c.video_a = get_string(doc, "video_a");
  c.video_b = get_string(doc, "video_b");
  if (doc.contains("fps")) {
    const json& f = doc.at("fps");
    if (f.is_number_integer()) {
      c.fps = FrameRate::parse(std::to_string(f.get<long long>()));
    } else if (f.is_string()) {
      c.fps = FrameRate::parse(f.get<std::string>());
    } else {
      config_error("'fps' must be an integer or a \"num/den\" string");
    }
  }
  c.reference_a = get_optional_string(doc, "reference_a");
  c.reference_b = get_optional_string(doc, "reference_b");
  c.roi_a = parse_roi(doc, "roi_a");
  c.roi_b = parse_roi(doc, "roi_b");
  c.corners_a = parse_corners(doc, "corners_a");
  c.corners_b = parse_corners(doc, "corners_b");
  if (doc.contains("threshold")) c.threshold = get_number(doc.at("threshold"), "threshold");
  if (!(c.threshold > 0.0) || c.threshold > 255.0) config_error("'threshold' must lie in (0, 255]");
  if (doc.contains("pre")) c.pre = get_int(doc.at("pre"), "pre");
  if (doc.contains("post")) c.post = get_int(doc.at("post"), "post");
  if (c.pre_frames() < 0 || c.post_frames() < 0) config_error("'pre' and 'post' must be >= 0");
  if (doc.contains("mode")) {
    if (!doc.at("mode").is_string()) config_error("'mode' must be a string");
    try {
      c.mode = parse_composite_mode(doc.at("mode").get<std::string>());
    } catch (const ConfigError& e) {
      config_error(e.what());
    }
  }
  if (doc.contains("alpha")) c.alpha = get_number(doc.at("alpha"), "alpha");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) config_error("'alpha' must lie in [0, 1]");
  if (doc.contains("fill")) c.fill = parse_rgb(doc.at("fill"), "fill");
  if (doc.contains("warp_side_by_side")) {
    if (!doc.at("warp_side_by_side").is_boolean()) config_error("'warp_side_by_side' must be a boolean");
    c.warp_side_by_side = doc.at("warp_side_by_side").get<bool>();
  }
  c.output = get_string(doc, "output");
  PathPattern(c.output);  // validates the pattern
  c.report = get_optional_string(doc, "report");
  c.signal_csv_a = get_optional_string(doc, "signal_csv_a");
  c.signal_csv_b = get_optional_string(doc, "signal_csv_b");
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  return parse_pipeline_config(read_json(path));
}

json to_json(const PipelineConfig& c) {
  json doc = {{"video_a", c.video_a},
              {"video_b", c.video_b},
              {"fps", c.fps.to_string()},
              {"roi_a", roi_json(c.roi_a)},
              {"roi_b", roi_json(c.roi_b)},
              {"corners_a", corners_json(c.corners_a)},
              {"corners_b", corners_json(c.corners_b)},
              {"threshold", c.threshold},
              {"pre", c.pre_frames()},
              {"post", c.post_frames()},
              {"mode", to_string(c.mode)},
              {"alpha", c.alpha},
              {"fill", json::array({c.fill.r, c.fill.g, c.fill.b})},
              {"warp_side_by_side", c.warp_side_by_side},
              {"output", c.output}};
  if (c.reference_a) doc["reference_a"] = *c.reference_a;
  if (c.reference_b) doc["reference_b"] = *c.reference_b;
  if (c.report) doc["report"] = *c.report;
  if (c.signal_csv_a) doc["signal_csv_a"] = *c.signal_csv_a;
  if (c.signal_csv_b) doc["signal_csv_b"] = *c.signal_csv_b;
  return doc;
}

json to_json(const RunReport& r, bool include_timing) {
  json doc = {{"base_a", r.base_a},
              {"base_b", r.base_b},
              {"offset", r.offset},
              {"pre", r.pre},
              {"post", r.post},
              {"homography_b_to_a", r.homography},
              {"pad_counts", {{"a", r.pad_a}, {"b", r.pad_b}}},
              {"frames_written", r.frames_written},
              {"mode", to_string(r.mode)},
              {"alpha", r.alpha}};
  if (include_timing) doc["timing_ms"] = r.timing_ms;
  return doc;
}

json composite_sidecar(const SyncPlan& plan, const CompositeSpec& spec, int pad_a, int pad_b) {
  return {{"mode", to_string(spec.mode)},
          {"alpha", spec.alpha},
          {"offset", plan.offset},
          {"base_a", plan.base_a},
          {"base_b", plan.base_b},
          {"pad_counts", {{"a", pad_a}, {"b", pad_b}}}};
}

BaseFrameResult detect_view(const Clip& clip, const std::optional<Frame>& reference,
                            const LineRoi& roi, double threshold) {
  DetectionConfig config{threshold, reference ? *reference : median_background(clip), roi};
  return detect_base_frame(clip, config);
}

Homography homography_from_corners(const Corners& from, const Corners& to) {
  return estimate_homography({{from.begin(), from.end()}, {to.begin(), to.end()}});
}

Clip warp_clip(const Clip& clip, const Homography& h, int out_width, int out_height, Rgb fill) {
  std::vector<Frame> frames;
  frames.reserve(clip.size());
  for (const auto& f : clip.frames()) frames.push_back(warp_frame(f, h, out_width, out_height, fill));
  return Clip(std::move(frames), clip.fps());
}

void write_signal_csv(const std::vector<double>& signal, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "frame_index,difference\n";
  char buf[64];
  for (std::size_t i = 0; i < signal.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i, signal[i]);
    out << buf;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const json& doc, const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

RunReport run_pipeline(const PipelineConfig& config) {
  RunReport report;
  StageTimer timer(report.timing_ms);
  const int pre = config.pre_frames();
  const int post = config.post_frames();
  if (pre < 0 || post < 0) throw ConfigError("config: window extents must be non-negative");

  struct Inputs {
    Clip a, b;
    std::optional<Frame> ref_a, ref_b;
  };
  const Inputs in = timer.run("load", [&] {
    Inputs i{read_frame_sequence(config.video_a, config.fps),
             read_frame_sequence(config.video_b, config.fps), std::nullopt, std::nullopt};
    if (config.reference_a) i.ref_a = read_ppm(*config.reference_a);
    if (config.reference_b) i.ref_b = read_ppm(*config.reference_b);
    return i;
  });

  const auto [det_a, det_b] = timer.run("detect", [&] {
    auto a = detect_view(in.a, in.ref_a, config.roi_a, config.threshold);
    auto b = detect_view(in.b, in.ref_b, config.roi_b, config.threshold);
    if (config.signal_csv_a) write_signal_csv(a.signal, *config.signal_csv_a);
    if (config.signal_csv_b) write_signal_csv(b.signal, *config.signal_csv_b);
    return std::pair{std::move(a), std::move(b)};
  });

  const SyncPlan plan = timer.run("plan", [&] {
    return make_sync_plan(static_cast<int>(det_a.base_index), static_cast<int>(det_b.base_index),
                          pre, post);
  });

  const Homography h_ba =
      timer.run("homography", [&] { return homography_from_corners(config.corners_b, config.corners_a); });

  // Only B's frames inside the window are needed; pairing against the
  // window with a shifted base is identical to pairing against the clip.
  const bool warp = config.mode == CompositeMode::overlay || config.warp_side_by_side;
  const auto [b_window, local_plan] = timer.run("warp", [&] {
    ClipWindow w = extract_window(in.b, plan.base_b, pre, post);
    Clip clip = warp ? warp_clip(w.clip, h_ba, in.a.width(), in.a.height(), config.fill)
                     : std::move(w.clip);
    return std::pair{std::move(clip), make_sync_plan(plan.base_a, plan.base_b - w.first, pre, post)};
  });

  const CompositeSpec spec{config.mode, config.alpha, config.fill};
  const RenderResult rendered = timer.run("compose", [&] { return render(in.a, b_window, local_plan, spec); });

  report.base_a = plan.base_a;
  report.base_b = plan.base_b;
  report.offset = plan.offset;
  report.pre = pre;
  report.post = post;
  report.homography = h_ba.entries();
  report.pad_a = rendered.pad_a;
  report.pad_b = rendered.pad_b;
  report.frames_written = static_cast<int>(rendered.clip.size());
  report.mode = config.mode;
  report.alpha = config.alpha;

  timer.run("write", [&] {
    write_frame_sequence(rendered.clip, config.output);
    write_json(composite_sidecar(plan, spec, rendered.pad_a, rendered.pad_b), config.sidecar_path());
  });
  write_json(to_json(report), config.report_path());
  return report;
}

}  // namespace jumpsync

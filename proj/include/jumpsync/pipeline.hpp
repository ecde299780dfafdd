#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jumpsync/compose.hpp"
#include "jumpsync/frame.hpp"
#include "jumpsync/geometry.hpp"
#include "jumpsync/temporal.hpp"

namespace jumpsync {

using Corners = std::array<Point2, 4>;  // top-left, top-right, bottom-right, bottom-left

/// Everything `sync` needs. Video A is the reference view: B is warped and
/// time-shifted onto A.
struct PipelineConfig {
  std::string video_a;
  std::string video_b;
  FrameRate fps{120, 1};
  std::optional<std::string> reference_a;
  std::optional<std::string> reference_b;
  LineRoi roi_a;
  LineRoi roi_b;
  Corners corners_a{};
  Corners corners_b{};
  double threshold = kDefaultThreshold;
  std::optional<int> pre;   // default: 2 s at fps
  std::optional<int> post;  // default: 2 s at fps
  CompositeMode mode = CompositeMode::overlay;
  double alpha = 0.5;
  Rgb fill{};
  bool warp_side_by_side = true;
  std::string output;
  std::optional<std::string> report;  // default: <output dir>/report.json
  std::optional<std::string> signal_csv_a;
  std::optional<std::string> signal_csv_b;

  int pre_frames() const;
  int post_frames() const;
  std::filesystem::path report_path() const;
  std::filesystem::path sidecar_path() const;
};

/// Parses and validates a config document. Throws ConfigError on missing or
/// malformed fields, before any frame is touched.
PipelineConfig parse_pipeline_config(const nlohmann::json& doc);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
nlohmann::json to_json(const PipelineConfig& config);

struct RunReport {
  int base_a = 0;
  int base_b = 0;
  int offset = 0;
  int pre = 0;
  int post = 0;
  std::array<double, 9> homography{};  // B -> A, canonical
  int pad_a = 0;
  int pad_b = 0;
  int frames_written = 0;
  CompositeMode mode = CompositeMode::overlay;
  double alpha = 0.5;
  std::map<std::string, double> timing_ms;
};

nlohmann::json to_json(const RunReport& report, bool include_timing = true);

/// JSON sidecar written next to the composite frames.
nlohmann::json composite_sidecar(const SyncPlan& plan, const CompositeSpec& spec, int pad_a,
                                 int pad_b);

/// Base-frame detection for one view; falls back to the median of the first
/// frames when no reference is given.
BaseFrameResult detect_view(const Clip& clip, const std::optional<Frame>& reference,
                            const LineRoi& roi, double threshold);

/// Homography taking `from` corners onto `to` corners.
Homography homography_from_corners(const Corners& from, const Corners& to);

Clip warp_clip(const Clip& clip, const Homography& h, int out_width, int out_height, Rgb fill);

void write_signal_csv(const std::vector<double>& signal, const std::filesystem::path& path);

/// Loads clips, detects both base frames, builds the sync plan, estimates the
/// B -> A homography from the stand corners, warps B, composites and writes
/// the frames, sidecar and report. Errors carry the failing stage's name.
RunReport run_pipeline(const PipelineConfig& config);

/// Serializes JSON with a trailing newline and creates parent directories.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace jumpsync

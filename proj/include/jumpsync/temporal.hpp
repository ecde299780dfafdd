#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jumpsync/frame.hpp"
#include "jumpsync/geometry.hpp"

namespace jumpsync {

/// A thick line segment. Endpoints are in pixel-index coordinates: pixel
/// (x, y) sits at the point (x, y).
struct LineRoi {
  Point2 p0;
  Point2 p1;
  int thickness = 3;
};

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
  friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

struct DetectionConfig {
  double threshold = 12.0;
  Frame reference;
  LineRoi roi;
};

struct BaseFrameResult {
  std::size_t base_index = 0;
  std::vector<double> signal;
};

struct SyncPlan {
  int base_a = 0;
  int base_b = 0;
  int offset = 0;  // base_a - base_b
  int pre = 0;
  int post = 0;
};

/// A sub-range of a clip. `first` is the source index of clip[0].
struct ClipWindow {
  Clip clip;
  int first = 0;
  int clamped_before = 0;
  int clamped_after = 0;
};

constexpr double kDefaultThreshold = 12.0;
constexpr int kDefaultRoiThickness = 3;
constexpr double kDefaultWindowSeconds = 2.0;
constexpr int kMedianBackgroundFrames = 30;

void validate_roi(const LineRoi& roi, int width, int height);

/// Pixels alongside the segment (their orthogonal projection falls on it)
/// within thickness/2 of it, in row-major order.
std::vector<PixelCoord> rasterize_roi(const LineRoi& roi, int width, int height);

/// Mean absolute luma difference between `frame` and the reference over
/// `roi_pixels`.
double roi_difference(const Frame& frame, const DetectionConfig& config,
                      const std::vector<PixelCoord>& roi_pixels);

/// Per-frame ROI difference signal (parallel across frames).
std::vector<double> difference_signal(const Clip& clip, const DetectionConfig& config);

/// First frame whose signal exceeds the threshold.
BaseFrameResult detect_base_frame(const Clip& clip, const DetectionConfig& config);

/// First index with signal[i] > threshold, if any.
std::optional<std::size_t> first_crossing(const std::vector<double>& signal, double threshold);

SyncPlan make_sync_plan(int base_a, int base_b, int pre, int post);

ClipWindow extract_window(const Clip& clip, int base, int pre, int post);

/// Per-pixel, per-channel median of the first `count` frames (lower median
/// for even counts). Used when no athlete-free reference is supplied.
Frame median_background(const Clip& clip, int count = kMedianBackgroundFrames);

}  // namespace jumpsync

#include "jumpsync/temporal.hpp"

#include <algorithm>
#include <cmath>

#include "jumpsync/error.hpp"
#include "jumpsync/kernels.hpp"

namespace jumpsync {

namespace {

constexpr double kRasterEpsilon = 1e-9;

bool inside_raster(Point2 p, int width, int height) {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0 &&
         p.x <= width - 1 && p.y <= height - 1;
}

void validate_detection(const Clip& clip, const DetectionConfig& config) {
  if (clip.empty()) throw ConfigError("cannot detect an event in an empty clip");
  if (!(config.threshold > 0.0) || config.threshold > 255.0) {
    throw ConfigError("detection threshold must lie in (0, 255]");
  }
  if (config.reference.empty() || config.reference.width() != clip.width() ||
      config.reference.height() != clip.height()) {
    throw ConfigError("reference frame size does not match the clip");
  }
}

}  // namespace

void validate_roi(const LineRoi& roi, int width, int height) {
  if (roi.thickness < 1 || roi.thickness % 2 == 0) {
    throw ConfigError("ROI thickness must be an odd integer >= 1");
  }
  if (!inside_raster(roi.p0, width, height) || !inside_raster(roi.p1, width, height)) {
    throw ConfigError("ROI endpoints must lie inside the " + std::to_string(width) + "x" +
                      std::to_string(height) + " raster");
  }
  if (roi.p0 == roi.p1) throw ConfigError("ROI endpoints coincide");
}

std::vector<PixelCoord> rasterize_roi(const LineRoi& roi, int width, int height) {
  validate_roi(roi, width, height);
  const double half = roi.thickness / 2.0;
  const double dx = roi.p1.x - roi.p0.x;
  const double dy = roi.p1.y - roi.p0.y;
  const double len2 = dx * dx + dy * dy;
  const double len = std::sqrt(len2);

  const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(roi.p0.x, roi.p1.x) - half)));
  const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(std::max(roi.p0.x, roi.p1.x) + half)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(roi.p0.y, roi.p1.y) - half)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(std::max(roi.p0.y, roi.p1.y) + half)));

  std::vector<PixelCoord> pixels;
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      const double px = x - roi.p0.x;
      const double py = y - roi.p0.y;
      const double t = (px * dx + py * dy) / len2;
      if (t < -kRasterEpsilon || t > 1.0 + kRasterEpsilon) continue;
      const double perp = std::abs(dx * py - dy * px) / len;
      if (perp <= half + kRasterEpsilon) pixels.push_back({x, y});
    }
  }
  if (pixels.empty()) throw ConfigError("ROI covers no pixels");
  return pixels;
}

double roi_difference(const Frame& frame, const DetectionConfig& config,
                      const std::vector<PixelCoord>& roi_pixels) {
  if (roi_pixels.empty()) throw ConfigError("ROI pixel set is empty");
  if (!frame.same_size(config.reference)) {
    throw ConfigError("frame and reference differ in size");
  }
  std::int64_t sum = 0;
  for (const auto& p : roi_pixels) {
    if (p.x < 0 || p.y < 0 || p.x >= frame.width() || p.y >= frame.height()) {
      throw ConfigError("ROI pixel outside the frame");
    }
    const Rgb f = frame.at(p.x, p.y);
    const Rgb r = config.reference.at(p.x, p.y);
    sum += std::abs(static_cast<int>(luma(f.r, f.g, f.b)) - static_cast<int>(luma(r.r, r.g, r.b)));
  }
  return static_cast<double>(sum) / static_cast<double>(roi_pixels.size());
}

std::vector<double> difference_signal(const Clip& clip, const DetectionConfig& config) {
  validate_detection(clip, config);
  const auto roi = rasterize_roi(config.roi, clip.width(), clip.height());
  std::vector<std::size_t> indices;
  std::vector<std::uint8_t> reference_luma;
  indices.reserve(roi.size());
  reference_luma.reserve(roi.size());
  for (const auto& p : roi) {
    indices.push_back(static_cast<std::size_t>(p.y) * static_cast<std::size_t>(clip.width()) +
                      static_cast<std::size_t>(p.x));
    const Rgb r = config.reference.at(p.x, p.y);
    reference_luma.push_back(luma(r.r, r.g, r.b));
  }
  return kernels::parallel::roi_signal(clip.frames(), indices, reference_luma);
}

std::optional<std::size_t> first_crossing(const std::vector<double>& signal, double threshold) {
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (signal[i] > threshold) return i;
  }
  return std::nullopt;
}

BaseFrameResult detect_base_frame(const Clip& clip, const DetectionConfig& config) {
  BaseFrameResult result;
  result.signal = difference_signal(clip, config);
  const auto base = first_crossing(result.signal, config.threshold);
  if (!base) {
    throw DetectionError("event not found: no frame exceeds the threshold of " +
                         std::to_string(config.threshold));
  }
  result.base_index = *base;
  return result;
}

SyncPlan make_sync_plan(int base_a, int base_b, int pre, int post) {
  if (base_a < 0 || base_b < 0) throw ConfigError("base frame indices must be non-negative");
  if (pre < 0 || post < 0) throw ConfigError("window extents must be non-negative");
  return {base_a, base_b, base_a - base_b, pre, post};
}

ClipWindow extract_window(const Clip& clip, int base, int pre, int post) {
  if (pre < 0 || post < 0) throw ConfigError("window extents must be non-negative");
  const int len = static_cast<int>(clip.size());
  if (base < 0 || base >= len) {
    throw ConfigError("window is empty: base frame " + std::to_string(base) +
                      " lies outside a clip of " + std::to_string(len) + " frames");
  }
  const int lo = std::max(0, base - pre);
  const int hi = std::min(len - 1, base + post);
  std::vector<Frame> frames(clip.frames().begin() + lo, clip.frames().begin() + hi + 1);
  ClipWindow w;
  w.clip = Clip(std::move(frames), clip.fps());
  w.first = lo;
  w.clamped_before = lo - (base - pre);
  w.clamped_after = (base + post) - hi;
  return w;
}

Frame median_background(const Clip& clip, int count) {
  if (clip.empty()) throw ConfigError("cannot build a background from an empty clip");
  if (count < 1) throw ConfigError("background frame count must be positive");
  const std::size_t n = std::min(clip.size(), static_cast<std::size_t>(count));
  Frame out(clip.width(), clip.height());
  kernels::parallel::median(std::span(clip.frames()).first(n), out);
  return out;
}

}  // namespace jumpsync

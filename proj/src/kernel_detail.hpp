#pragma once

// Per-element arithmetic shared by the serial and OpenMP kernels. Keeping it
// in one place is what makes the two variants bit-identical.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>

#include <Eigen/Core>

#include "jumpsync/frame.hpp"

namespace jumpsync::kernels::detail {

// Source coordinates within this distance of an integer are snapped to it, so
// that identity and integer translations resample without drift.
inline constexpr double kSnapEpsilon = 1e-9;
inline constexpr double kMinW = 1e-12;

inline double snap(double v) {
  const double n = std::nearbyint(v);
  return std::abs(v - n) < kSnapEpsilon ? n : v;
}

inline void warp_row(const Frame& src, const Eigen::Matrix3d& inv, Rgb fill, int v,
                     std::span<std::uint8_t> out_row) {
  const int sw = src.width();
  const int sh = src.height();
  const auto pixels = src.pixels();
  const std::size_t stride = static_cast<std::size_t>(sw) * 3;
  const double y = v + 0.5;
  const int out_w = static_cast<int>(out_row.size() / 3);
  for (int u = 0; u < out_w; ++u) {
    std::uint8_t* dst = out_row.data() + static_cast<std::size_t>(u) * 3;
    const double x = u + 0.5;
    const double w = inv(2, 0) * x + inv(2, 1) * y + inv(2, 2);
    bool inside = std::abs(w) > kMinW;
    double sx = 0.0;
    double sy = 0.0;
    if (inside) {
      sx = snap((inv(0, 0) * x + inv(0, 1) * y + inv(0, 2)) / w - 0.5);
      sy = snap((inv(1, 0) * x + inv(1, 1) * y + inv(1, 2)) / w - 0.5);
      inside = sx >= 0.0 && sy >= 0.0 && sx <= sw - 1 && sy <= sh - 1;
    }
    if (!inside) {
      dst[0] = fill.r;
      dst[1] = fill.g;
      dst[2] = fill.b;
      continue;
    }
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const double fx = sx - x0;
    const double fy = sy - y0;
    // On the last row/column the fractional part is zero and the missing
    // neighbour carries no weight.
    const int x1 = std::min(x0 + 1, sw - 1);
    const int y1 = std::min(y0 + 1, sh - 1);
    const std::uint8_t* p00 = pixels.data() + static_cast<std::size_t>(y0) * stride + static_cast<std::size_t>(x0) * 3;
    const std::uint8_t* p10 = pixels.data() + static_cast<std::size_t>(y0) * stride + static_cast<std::size_t>(x1) * 3;
    const std::uint8_t* p01 = pixels.data() + static_cast<std::size_t>(y1) * stride + static_cast<std::size_t>(x0) * 3;
    const std::uint8_t* p11 = pixels.data() + static_cast<std::size_t>(y1) * stride + static_cast<std::size_t>(x1) * 3;
    for (int c = 0; c < 3; ++c) {
      const double top = p00[c] * (1.0 - fx) + p10[c] * fx;
      const double bottom = p01[c] * (1.0 - fx) + p11[c] * fx;
      dst[c] = clamp_round_u8(top * (1.0 - fy) + bottom * fy);
    }
  }
}

inline std::uint8_t blend_value(std::uint8_t a, std::uint8_t b, double wa, double wb) {
  return clamp_round_u8(wa * a + wb * b);
}

inline double roi_mean(const Frame& frame, std::span<const std::size_t> pixel_indices,
                       std::span<const std::uint8_t> reference_luma) {
  const auto px = frame.pixels();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < pixel_indices.size(); ++i) {
    const std::size_t p = pixel_indices[i];
    const int y = luma(px[p * 3], px[p * 3 + 1], px[p * 3 + 2]);
    sum += std::abs(y - static_cast<int>(reference_luma[i]));
  }
  return static_cast<double>(sum) / static_cast<double>(pixel_indices.size());
}

inline std::uint8_t median_at(std::span<const Frame> frames, std::size_t byte_index) {
  std::array<std::size_t, 256> counts{};
  for (const Frame& f : frames) ++counts[f.pixels()[byte_index]];
  const std::size_t rank = (frames.size() - 1) / 2;
  std::size_t seen = 0;
  for (int v = 0; v < 256; ++v) {
    seen += counts[static_cast<std::size_t>(v)];
    if (seen > rank) return static_cast<std::uint8_t>(v);
  }
  return 255;
}

}  // namespace jumpsync::kernels::detail

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "jumpsync/frame.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP implementation used by
// the library and a serial reference with identical per-element arithmetic;
// the two must agree bit-for-bit for any thread count.
namespace jumpsync::kernels {

struct BlendWeights {
  double a = 0.5;
  double b = 0.5;
};

/// Weights for (1 - alpha) a + alpha b that sum to exactly 1 and are the same
/// pair, mirrored, for alpha and the rounded value of 1 - alpha.
BlendWeights blend_weights(double alpha);

namespace serial {
void luma(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> out);
// `inverse` maps destination pixel centers into source coordinates.
void warp(const Frame& src, const Eigen::Matrix3d& inverse, Rgb fill, Frame& dst);
void blend(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, BlendWeights w,
           std::span<std::uint8_t> out);
// Mean |luma(frame) - reference| over the listed pixel indices, per frame.
std::vector<double> roi_signal(std::span<const Frame> frames,
                               std::span<const std::size_t> pixel_indices,
                               std::span<const std::uint8_t> reference_luma);
// Per-channel lower median over `frames` (all the same size).
void median(std::span<const Frame> frames, Frame& out);
}  // namespace serial

namespace parallel {
void luma(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> out);
// `inverse` maps destination pixel centers into source coordinates.
void warp(const Frame& src, const Eigen::Matrix3d& inverse, Rgb fill, Frame& dst);
void blend(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, BlendWeights w,
           std::span<std::uint8_t> out);
// Mean |luma(frame) - reference| over the listed pixel indices, per frame.
std::vector<double> roi_signal(std::span<const Frame> frames,
                               std::span<const std::size_t> pixel_indices,
                               std::span<const std::uint8_t> reference_luma);
// Per-channel lower median over `frames` (all the same size).
void median(std::span<const Frame> frames, Frame& out);
}  // namespace parallel

}  // namespace jumpsync::kernels

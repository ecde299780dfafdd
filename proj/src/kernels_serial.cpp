#include "jumpsync/kernels.hpp"

#include "kernel_detail.hpp"

namespace jumpsync::kernels {

BlendWeights blend_weights(double alpha) {
  // For alpha >= 0.5, 1 - alpha is exact (Sterbenz), and for the mirrored
  // call the larger weight is the caller's rounded 1 - alpha. Deriving the
  // smaller weight from the larger one makes both calls use the same pair.
  if (alpha >= 0.5) return {1.0 - alpha, alpha};
  const double a = 1.0 - alpha;
  return {a, 1.0 - a};
}

namespace serial {

void luma(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = jumpsync::luma(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2]);
  }
}

void warp(const Frame& src, const Eigen::Matrix3d& inverse, Rgb fill, Frame& dst) {
  for (int v = 0; v < dst.height(); ++v) {
    detail::warp_row(src, inverse, fill, v, dst.row(v));
  }
}

void blend(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, BlendWeights w,
           std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = detail::blend_value(a[i], b[i], w.a, w.b);
  }
}

std::vector<double> roi_signal(std::span<const Frame> frames,
                               std::span<const std::size_t> pixel_indices,
                               std::span<const std::uint8_t> reference_luma) {
  std::vector<double> signal(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    signal[i] = detail::roi_mean(frames[i], pixel_indices, reference_luma);
  }
  return signal;
}

void median(std::span<const Frame> frames, Frame& out) {
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = detail::median_at(frames, i);
}

}  // namespace serial
}  // namespace jumpsync::kernels

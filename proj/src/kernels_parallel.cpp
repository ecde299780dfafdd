#include "jumpsync/kernels.hpp"

#include <cstdint>

#include "kernel_detail.hpp"

namespace jumpsync::kernels::parallel {

void luma(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = jumpsync::luma(rgb[k * 3], rgb[k * 3 + 1], rgb[k * 3 + 2]);
  }
}

void warp(const Frame& src, const Eigen::Matrix3d& inverse, Rgb fill, Frame& dst) {
  const int rows = dst.height();
#pragma omp parallel for schedule(static)
  for (int v = 0; v < rows; ++v) {
    detail::warp_row(src, inverse, fill, v, dst.row(v));
  }
}

void blend(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, BlendWeights w,
           std::span<std::uint8_t> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detail::blend_value(a[k], b[k], w.a, w.b);
  }
}

std::vector<double> roi_signal(std::span<const Frame> frames,
                               std::span<const std::size_t> pixel_indices,
                               std::span<const std::uint8_t> reference_luma) {
  std::vector<double> signal(frames.size());
  const auto n = static_cast<std::int64_t>(frames.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    signal[k] = detail::roi_mean(frames[k], pixel_indices, reference_luma);
  }
  return signal;
}

void median(std::span<const Frame> frames, Frame& out) {
  auto px = out.pixels();
  const auto n = static_cast<std::int64_t>(px.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    px[static_cast<std::size_t>(i)] = detail::median_at(frames, static_cast<std::size_t>(i));
  }
}

}  // namespace jumpsync::kernels::parallel

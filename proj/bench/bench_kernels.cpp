// Serial reference vs OpenMP kernels at 1920x1080.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "jumpsync/kernels.hpp"

namespace {

using namespace jumpsync;

constexpr int kW = 1920;
constexpr int kH = 1080;

Frame noise_frame(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(kW) * kH * 3);
  for (auto& v : px) v = static_cast<std::uint8_t>(rng());
  return Frame(kW, kH, std::move(px));
}

const Frame& frame_a() {
  static const Frame f = noise_frame(1);
  return f;
}
const Frame& frame_b() {
  static const Frame f = noise_frame(2);
  return f;
}

Eigen::Matrix3d tilt() {
  Eigen::Matrix3d m;
  m << 0.97, 0.05, -12.0, -0.04, 1.02, 8.0, 2e-5, -1e-5, 1.0;
  return m;
}

template <auto Fn>
void luma(benchmark::State& state) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(kW) * kH);
  for (auto _ : state) {
    Fn(frame_a().pixels(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * kW * kH);
}

template <auto Fn>
void warp(benchmark::State& state) {
  Frame out(kW, kH);
  const Eigen::Matrix3d m = tilt();
  for (auto _ : state) {
    Fn(frame_a(), m, Rgb{}, out);
    benchmark::DoNotOptimize(out.pixels().data());
  }
  state.SetItemsProcessed(state.iterations() * kW * kH);
}

template <auto Fn>
void blend(benchmark::State& state) {
  Frame out(kW, kH);
  const auto w = kernels::blend_weights(0.4);
  for (auto _ : state) {
    Fn(frame_a().pixels(), frame_b().pixels(), w, out.pixels());
    benchmark::DoNotOptimize(out.pixels().data());
  }
  state.SetItemsProcessed(state.iterations() * kW * kH);
}

template <auto Fn>
void roi_signal(benchmark::State& state) {
  const std::vector<Frame> frames(16, frame_a());
  std::vector<std::uint8_t> ref(static_cast<std::size_t>(kW) * kH, 128);
  std::vector<std::size_t> idx;
  for (int x = 100; x < 1800; ++x) {
    for (int dy = -1; dy <= 1; ++dy) idx.push_back(static_cast<std::size_t>(540 + dy + x / 8) * kW + x);
  }
  for (auto _ : state) {
    auto s = Fn(frames, idx, ref);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames.size()));
}

template <auto Fn>
void median(benchmark::State& state) {
  std::vector<Frame> frames;
  for (int i = 0; i < 9; ++i) frames.push_back(noise_frame(10 + static_cast<std::uint64_t>(i)));
  Frame out(kW, kH);
  for (auto _ : state) {
    Fn(frames, out);
    benchmark::DoNotOptimize(out.pixels().data());
  }
  state.SetItemsProcessed(state.iterations() * kW * kH);
}

BENCHMARK(luma<kernels::serial::luma>)->Name("luma/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(luma<kernels::parallel::luma>)->Name("luma/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(warp<kernels::serial::warp>)->Name("warp/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(warp<kernels::parallel::warp>)->Name("warp/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(blend<kernels::serial::blend>)->Name("blend/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(blend<kernels::parallel::blend>)->Name("blend/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(roi_signal<kernels::serial::roi_signal>)->Name("roi_signal/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(roi_signal<kernels::parallel::roi_signal>)
    ->Name("roi_signal/parallel")
    ->Unit(benchmark::kMicrosecond)
    ->UseRealTime();
BENCHMARK(median<kernels::serial::median>)->Name("median/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(median<kernels::parallel::median>)->Name("median/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

#include "jumpsync/compose.hpp"

#include <algorithm>
#include <cstring>

#include "jumpsync/error.hpp"
#include "jumpsync/kernels.hpp"

namespace jumpsync {

std::string to_string(CompositeMode mode) {
  return mode == CompositeMode::side_by_side ? "side_by_side" : "overlay";
}

CompositeMode parse_composite_mode(const std::string& text) {
  if (text == "side_by_side") return CompositeMode::side_by_side;
  if (text == "overlay") return CompositeMode::overlay;
  throw ConfigError("unknown composite mode '" + text + "' (expected side_by_side or overlay)");
}

PairPlan pair_frames(const Clip& clip_a, const Clip& clip_b, const SyncPlan& plan) {
  if (clip_a.empty() || clip_b.empty()) throw ConfigError("cannot pair frames of an empty clip");
  if (plan.pre < 0 || plan.post < 0) throw ConfigError("window extents must be non-negative");
  const auto lookup = [](const Clip& clip, long index) -> std::optional<std::size_t> {
    if (index < 0 || index >= static_cast<long>(clip.size())) return std::nullopt;
    return static_cast<std::size_t>(index);
  };
  PairPlan out;
  out.pairs.reserve(static_cast<std::size_t>(plan.pre) + static_cast<std::size_t>(plan.post) + 1);
  for (int k = -plan.pre; k <= plan.post; ++k) {
    FramePairIndex p{k, lookup(clip_a, static_cast<long>(plan.base_a) + k),
                     lookup(clip_b, static_cast<long>(plan.base_b) + k)};
    if (!p.a && !p.b) {
      throw ConfigError("neither clip has a frame at window offset " + std::to_string(k));
    }
    if (!p.a) ++out.pad_a;
    if (!p.b) ++out.pad_b;
    out.pairs.push_back(p);
  }
  return out;
}

std::vector<std::pair<Frame, Frame>> materialize_pairs(const Clip& clip_a, const Clip& clip_b,
                                                       const PairPlan& pairs, Rgb pad_color) {
  std::vector<std::pair<Frame, Frame>> out;
  out.reserve(pairs.pairs.size());
  for (const auto& p : pairs.pairs) {
    out.emplace_back(p.a ? clip_a[*p.a] : Frame(clip_a.width(), clip_a.height(), pad_color),
                     p.b ? clip_b[*p.b] : Frame(clip_b.width(), clip_b.height(), pad_color));
  }
  return out;
}

Frame side_by_side(const Frame& a, const Frame& b, Rgb pad_color) {
  if (a.empty() || b.empty()) throw ConfigError("cannot compose an empty frame");
  Frame out(a.width() + b.width(), std::max(a.height(), b.height()), pad_color);
  const std::size_t a_bytes = static_cast<std::size_t>(a.width()) * 3;
  const std::size_t b_bytes = static_cast<std::size_t>(b.width()) * 3;
  for (int y = 0; y < a.height(); ++y) std::memcpy(out.row(y).data(), a.row(y).data(), a_bytes);
  for (int y = 0; y < b.height(); ++y) {
    std::memcpy(out.row(y).data() + a_bytes, b.row(y).data(), b_bytes);
  }
  return out;
}

Frame overlay(const Frame& a, const Frame& b, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("overlay alpha must lie in [0, 1]");
  if (!a.same_size(b)) {
    throw ConfigError("overlay needs equal frame sizes, got " + std::to_string(a.width()) + "x" +
                      std::to_string(a.height()) + " and " + std::to_string(b.width()) + "x" +
                      std::to_string(b.height()));
  }
  Frame out(a.width(), a.height());
  kernels::parallel::blend(a.pixels(), b.pixels(), kernels::blend_weights(alpha), out.pixels());
  return out;
}

RenderResult render(const Clip& clip_a, const Clip& clip_b_warped, const SyncPlan& plan,
                    const CompositeSpec& spec) {
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
    throw ConfigError("overlay alpha must lie in [0, 1]");
  }
  if (spec.mode == CompositeMode::overlay &&
      (clip_a.width() != clip_b_warped.width() || clip_a.height() != clip_b_warped.height())) {
    throw ConfigError("overlay needs clip B warped to clip A's frame size");
  }
  const PairPlan pairs = pair_frames(clip_a, clip_b_warped, plan);
  const Frame pad_a(clip_a.width(), clip_a.height(), spec.pad_color);
  const Frame pad_b(clip_b_warped.width(), clip_b_warped.height(), spec.pad_color);

  std::vector<Frame> frames;
  frames.reserve(pairs.pairs.size());
  for (const auto& p : pairs.pairs) {
    const Frame& a = p.a ? clip_a[*p.a] : pad_a;
    const Frame& b = p.b ? clip_b_warped[*p.b] : pad_b;
    frames.push_back(spec.mode == CompositeMode::overlay ? overlay(a, b, spec.alpha)
                                                         : side_by_side(a, b, spec.pad_color));
  }
  return {Clip(std::move(frames), clip_a.fps()), pairs.pad_a, pairs.pad_b};
}

}  // namespace jumpsync

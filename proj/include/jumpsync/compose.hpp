#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jumpsync/frame.hpp"
#include "jumpsync/temporal.hpp"

namespace jumpsync {

enum class CompositeMode { side_by_side, overlay };

std::string to_string(CompositeMode mode);
CompositeMode parse_composite_mode(const std::string& text);

struct CompositeSpec {
  CompositeMode mode = CompositeMode::overlay;
  double alpha = 0.5;  // weight of clip B in overlay mode
  Rgb pad_color{};
};

/// Frame indices paired at window offset k. An empty index means the clip has
/// no frame there and a pad frame stands in.
struct FramePairIndex {
  int k = 0;
  std::optional<std::size_t> a;
  std::optional<std::size_t> b;
};

struct PairPlan {
  std::vector<FramePairIndex> pairs;
  int pad_a = 0;
  int pad_b = 0;
};

/// Pairs A[base_a + k] with B[base_b + k] for k in [-pre, post].
PairPlan pair_frames(const Clip& clip_a, const Clip& clip_b, const SyncPlan& plan);

/// Resolves a PairPlan into concrete frames, substituting pad frames.
std::vector<std::pair<Frame, Frame>> materialize_pairs(const Clip& clip_a, const Clip& clip_b,
                                                       const PairPlan& pairs, Rgb pad_color);

Frame side_by_side(const Frame& a, const Frame& b, Rgb pad_color = {});

/// round((1 - alpha) a + alpha b) per channel. overlay(a, b, alpha) equals
/// overlay(b, a, 1 - alpha) exactly.
Frame overlay(const Frame& a, const Frame& b, double alpha);

struct RenderResult {
  Clip clip;
  int pad_a = 0;
  int pad_b = 0;
};

RenderResult render(const Clip& clip_a, const Clip& clip_b_warped, const SyncPlan& plan,
                    const CompositeSpec& spec);

}  // namespace jumpsync

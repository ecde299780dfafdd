#pragma once

#include <array>
#include <cstdint>

#include "jumpsync/frame.hpp"
#include "jumpsync/geometry.hpp"
#include "jumpsync/temporal.hpp"

namespace jumpsync {

/// Two-view jump scene with exact ground truth.
///
/// View A shows a trapezoidal jump stand on flat snow. A dark disc (the
/// rider) travels along the stand's up-normal at `disc_speed` px/frame and is
/// centered on the stand's top edge at `event_frame_a`. View B renders the
/// same scene plane through `true_h` (A -> B) with the disc centered on the
/// edge at `event_frame_b`. Corner order: top-left, top-right, bottom-right,
/// bottom-left. Corner and disc coordinates are continuous image
/// coordinates (pixel (x, y) covers [x, x+1) x [y, y+1)).
struct Scenario {
  std::uint64_t seed = 0;
  int width = 320;
  int height = 180;
  FrameRate fps{120, 1};
  int n_frames = 120;
  int event_frame_a = 50;
  int event_frame_b = 40;
  Homography true_h = Homography::identity();
  std::array<Point2, 4> stand_corners_a{};
  std::array<Point2, 4> stand_corners_b{};
  double noise_sigma = 0.0;
  double disc_radius = 8.0;
  double disc_speed = 24.0;
  /// Position of the take-off point along the top edge, in [0, 1].
  double crossing_t = 0.5;

  /// Top-edge ROI in pixel-index coordinates, for detection in view A / B.
  LineRoi roi_a(int thickness = kDefaultRoiThickness) const;
  LineRoi roi_b(int thickness = kDefaultRoiThickness) const;
};

struct ScenarioOptions {
  int width = 320;
  int height = 180;
  FrameRate fps{120, 1};
  int n_frames = 120;
  double noise_sigma = 0.0;
  /// Event frames are drawn from [event_min, event_max].
  int event_min = 30;
  int event_max = 80;
};

/// Draws stand placement, viewpoint change and event timing from `seed`.
Scenario make_scenario(std::uint64_t seed, const ScenarioOptions& options = {});

enum class View { a, b };

/// Ground-truth disc center in the given view's image coordinates.
Point2 rider_position(const Scenario& s, View view, int frame);

struct SyntheticPair {
  Clip clip_a;
  Clip clip_b;
  Frame reference_a;
  Frame reference_b;
};

/// Throws ConfigError when the scenario is inconsistent (e.g. the disc never
/// cleanly crosses the top edge).
void validate_scenario(const Scenario& s);

SyntheticPair generate(const Scenario& s);

namespace synth_colors {
inline constexpr Rgb kSnow{226, 230, 236};
inline constexpr Rgb kStand{150, 142, 128};
inline constexpr Rgb kRider{28, 36, 150};
}  // namespace synth_colors

}  // namespace jumpsync

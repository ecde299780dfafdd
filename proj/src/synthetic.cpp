#include "jumpsync/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <random>

#include "jumpsync/error.hpp"

namespace jumpsync {

namespace {

constexpr double kCornerMargin = 4.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t view, std::uint64_t frame) {
  return splitmix64(splitmix64(splitmix64(seed) ^ view) ^ frame);
}

Point2 up_normal(const Scenario& s) {
  const Point2 tl = s.stand_corners_a[0];
  const Point2 tr = s.stand_corners_a[1];
  const double len = distance(tl, tr);
  const Point2 e{(tr.x - tl.x) / len, (tr.y - tl.y) / len};
  // The stand lies below its top edge (larger y); the rider leaves upward.
  return {e.y, -e.x};
}

Point2 crossing_point(const Scenario& s) {
  const Point2 tl = s.stand_corners_a[0];
  const Point2 tr = s.stand_corners_a[1];
  return {tl.x + s.crossing_t * (tr.x - tl.x), tl.y + s.crossing_t * (tr.y - tl.y)};
}

// Disc center in the scene (view A) plane, `frames_from_event` after the event.
Point2 disc_center(const Scenario& s, int frames_from_event) {
  const Point2 c = crossing_point(s);
  const Point2 up = up_normal(s);
  const double d = frames_from_event * s.disc_speed;
  return {c.x + d * up.x, c.y + d * up.y};
}

bool inside_quad(const std::array<Point2, 4>& q, Point2 p) {
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 a = q[i];
    const Point2 b = q[(i + 1) % 4];
    const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (c > 0) pos = true;
    if (c < 0) neg = true;
  }
  return !(pos && neg);
}

bool corners_inside(const std::array<Point2, 4>& corners, int width, int height, double margin) {
  for (const auto& p : corners) {
    if (!(p.x >= margin && p.y >= margin && p.x <= width - margin && p.y <= height - margin)) {
      return false;
    }
  }
  return true;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Closest approach of the disc outline, seen through `to_view`, to the view's
// top edge.
double disc_clearance(const Scenario& s, const Homography& to_view,
                      const std::array<Point2, 4>& view_corners, int frames_from_event) {
  const Point2 c = disc_center(s, frames_from_event);
  double best = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 128;
  for (int i = 0; i < kSamples; ++i) {
    const double a = 2.0 * std::numbers::pi * i / kSamples;
    const Point2 p = apply(to_view, {c.x + s.disc_radius * std::cos(a), c.y + s.disc_radius * std::sin(a)});
    best = std::min(best, segment_distance(p, view_corners[0], view_corners[1]));
  }
  // The center itself may straddle the edge.
  const Point2 pc = apply(to_view, c);
  best = std::min(best, segment_distance(pc, view_corners[0], view_corners[1]));
  return best;
}

Frame render_view(const Scenario& s, const std::array<double, 9>& to_scene,
                  std::optional<Point2> disc, std::uint64_t noise_seed) {
  Frame frame(s.width, s.height);
  const double r2 = s.disc_radius * s.disc_radius;
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> noise(0.0, s.noise_sigma > 0.0 ? s.noise_sigma : 1.0);
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      const double qx = x + 0.5;
      const double qy = y + 0.5;
      const double w = to_scene[6] * qx + to_scene[7] * qy + to_scene[8];
      const Point2 p{(to_scene[0] * qx + to_scene[1] * qy + to_scene[2]) / w,
                     (to_scene[3] * qx + to_scene[4] * qy + to_scene[5]) / w};
      Rgb c = synth_colors::kSnow;
      if (disc && (p.x - disc->x) * (p.x - disc->x) + (p.y - disc->y) * (p.y - disc->y) <= r2) {
        c = synth_colors::kRider;
      } else if (inside_quad(s.stand_corners_a, p)) {
        c = synth_colors::kStand;
      }
      if (s.noise_sigma > 0.0) {
        // One luma-equivalent sample shared by the three channels.
        const double n = noise(rng);
        c = {clamp_round_u8(c.r + n), clamp_round_u8(c.g + n), clamp_round_u8(c.b + n)};
      }
      frame.set(x, y, c);
    }
  }
  return frame;
}

LineRoi edge_roi(const std::array<Point2, 4>& corners, int thickness) {
  // Continuous coordinates to pixel-index coordinates.
  return {{corners[0].x - 0.5, corners[0].y - 0.5}, {corners[1].x - 0.5, corners[1].y - 0.5},
          thickness};
}

}  // namespace

Point2 rider_position(const Scenario& s, View view, int frame) {
  if (view == View::a) return disc_center(s, frame - s.event_frame_a);
  return apply(s.true_h, disc_center(s, frame - s.event_frame_b));
}

LineRoi Scenario::roi_a(int thickness) const { return edge_roi(stand_corners_a, thickness); }
LineRoi Scenario::roi_b(int thickness) const { return edge_roi(stand_corners_b, thickness); }

Scenario make_scenario(std::uint64_t seed, const ScenarioOptions& options) {
  if (options.width < 64 || options.height < 36) throw ConfigError("synthetic raster too small");
  if (options.event_min < 1 || options.event_max < options.event_min ||
      options.event_max >= options.n_frames) {
    throw ConfigError("event range must lie inside [1, n_frames)");
  }
  std::mt19937_64 rng(splitmix64(seed));
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const double w = options.width;
  const double h = options.height;
  const double px_scale = w / 320.0;

  Scenario s;
  s.seed = seed;
  s.width = options.width;
  s.height = options.height;
  s.fps = options.fps;
  s.n_frames = options.n_frames;
  s.noise_sigma = options.noise_sigma;
  s.disc_radius = 8.0 * px_scale;
  s.disc_speed = 24.0 * px_scale;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Point2 top{uniform(0.4, 0.6) * w, uniform(0.42, 0.52) * h};
    const double tilt = uniform(-8.0, 8.0) * std::numbers::pi / 180.0;
    const double top_half = uniform(0.12, 0.16) * w;
    const double bottom_half = top_half * uniform(1.5, 1.9);
    const double depth = uniform(0.25, 0.32) * h;
    const Point2 e{std::cos(tilt), std::sin(tilt)};
    const Point2 down{-e.y, e.x};
    const Point2 bottom{top.x + depth * down.x, top.y + depth * down.y};
    s.stand_corners_a = {Point2{top.x - top_half * e.x, top.y - top_half * e.y},
                         Point2{top.x + top_half * e.x, top.y + top_half * e.y},
                         Point2{bottom.x + bottom_half * e.x, bottom.y + bottom_half * e.y},
                         Point2{bottom.x - bottom_half * e.x, bottom.y - bottom_half * e.y}};

    // Viewpoint change about the image center.
    const double angle = uniform(-6.0, 6.0) * std::numbers::pi / 180.0;
    const double scale = uniform(0.85, 1.15);
    const double tx = uniform(-0.06, 0.06) * w;
    const double ty = uniform(-0.06, 0.06) * h;
    const double gx = uniform(-3e-4, 3e-4) / px_scale;
    const double gy = uniform(-3e-4, 3e-4) / px_scale;
    Eigen::Matrix3d center, uncenter, core;
    center << 1, 0, -w / 2, 0, 1, -h / 2, 0, 0, 1;
    uncenter << 1, 0, w / 2 + tx, 0, 1, h / 2 + ty, 0, 0, 1;
    core << scale * std::cos(angle), -scale * std::sin(angle), 0, scale * std::sin(angle),
        scale * std::cos(angle), 0, gx, gy, 1;
    s.true_h = Homography(uncenter * core * center);
    for (std::size_t i = 0; i < 4; ++i) s.stand_corners_b[i] = apply(s.true_h, s.stand_corners_a[i]);
    if (corners_inside(s.stand_corners_a, s.width, s.height, kCornerMargin) &&
        corners_inside(s.stand_corners_b, s.width, s.height, kCornerMargin)) {
      break;
    }
    if (attempt == 999) throw ConfigError("could not place the stand inside both views");
  }

  s.crossing_t = uniform(0.35, 0.65);
  std::uniform_int_distribution<int> event(options.event_min, options.event_max);
  s.event_frame_a = event(rng);
  s.event_frame_b = event(rng);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (s.width < 16 || s.height < 16) throw ConfigError("synthetic raster too small");
  if (s.n_frames < 1) throw ConfigError("scenario needs at least one frame");
  if (s.fps.num <= 0 || s.fps.den <= 0) throw ConfigError("frame rate must be positive");
  if (s.event_frame_a < 0 || s.event_frame_a >= s.n_frames || s.event_frame_b < 0 ||
      s.event_frame_b >= s.n_frames) {
    throw ConfigError("event frames must lie in [0, n_frames)");
  }
  if (!(s.noise_sigma >= 0.0) || !(s.disc_radius > 0.0) || !(s.disc_speed > 0.0)) {
    throw ConfigError("noise, disc radius and speed must be non-negative / positive");
  }
  if (!(s.crossing_t >= 0.0 && s.crossing_t <= 1.0)) {
    throw ConfigError("crossing position must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (distance(apply(s.true_h, s.stand_corners_a[i]), s.stand_corners_b[i]) > 1e-9) {
      throw ConfigError("view B corners are not the view A corners mapped through true_h");
    }
  }
  if (!corners_inside(s.stand_corners_a, s.width, s.height, 1.0) ||
      !corners_inside(s.stand_corners_b, s.width, s.height, 1.0)) {
    throw ConfigError("stand corners must lie inside both views");
  }

  // The disc must straddle the top edge at the event and be clear of the ROI
  // band one frame earlier, in both views.
  const double edge_len = distance(s.stand_corners_a[0], s.stand_corners_a[1]);
  const double along = s.crossing_t * edge_len;
  if (along < s.disc_radius + 1.0 || edge_len - along < s.disc_radius + 1.0) {
    throw ConfigError("disc trajectory never crosses the top edge cleanly: take-off too close to an end");
  }
  const double band = kDefaultRoiThickness / 2.0 + 1.0;
  if (disc_clearance(s, Homography::identity(), s.stand_corners_a, -1) <= band ||
      disc_clearance(s, s.true_h, s.stand_corners_b, -1) <= band) {
    throw ConfigError("disc trajectory never crosses the ROI line in a single step: "
                      "it touches the top edge before the event frame");
  }
}

SyntheticPair generate(const Scenario& s) {
  validate_scenario(s);
  const auto identity = Homography::identity().entries();
  const auto b_to_scene = invert(s.true_h).entries();
  std::vector<Frame> frames_a;
  std::vector<Frame> frames_b;
  frames_a.reserve(static_cast<std::size_t>(s.n_frames));
  frames_b.reserve(static_cast<std::size_t>(s.n_frames));
  for (int f = 0; f < s.n_frames; ++f) {
    const auto uf = static_cast<std::uint64_t>(f);
    frames_a.push_back(render_view(s, identity, disc_center(s, f - s.event_frame_a),
                                   stream_seed(s.seed, 0, uf)));
    frames_b.push_back(render_view(s, b_to_scene, disc_center(s, f - s.event_frame_b),
                                   stream_seed(s.seed, 1, uf)));
  }
  const auto ref_stream = static_cast<std::uint64_t>(s.n_frames) + 1;
  SyntheticPair out;
  out.clip_a = Clip(std::move(frames_a), s.fps);
  out.clip_b = Clip(std::move(frames_b), s.fps);
  out.reference_a = render_view(s, identity, std::nullopt, stream_seed(s.seed, 0, ref_stream));
  out.reference_b = render_view(s, b_to_scene, std::nullopt, stream_seed(s.seed, 1, ref_stream));
  return out;
}

}  // namespace jumpsync

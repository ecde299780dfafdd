// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jumpsync/compose.hpp"
#include "jumpsync/evalmetrics.hpp"
#include "jumpsync/frame_io.hpp"
#include "jumpsync/geometry.hpp"
#include "jumpsync/pipeline.hpp"
#include "jumpsync/synthetic.hpp"
#include "jumpsync/temporal.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace jumpsync;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Four points with every triple well away from collinear.
std::array<Point2, 4> random_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-200.0, 600.0);
  for (;;) {
    std::array<Point2, 4> q{};
    for (auto& p : q) p = {u(rng), u(rng)};
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      const Point2& a = q[static_cast<std::size_t>(i)];
      const Point2& b = q[static_cast<std::size_t>((i + 1) % 4)];
      const Point2& c = q[static_cast<std::size_t>((i + 2) % 4)];
      const double area = std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) / 2;
      if (area < 2000.0) ok = false;
    }
    if (ok) return q;
  }
}

Outcome homography_oracle() {
  Outcome o;
  std::mt19937_64 rng(0xC0FFEE);
  const auto t0 = Clock::now();
  double worst_entry = 0, worst_reproj = 0;
  int done = 0;
  while (done < 50) {
    const auto src = random_quad(rng);
    const auto dst = random_quad(rng);
    const auto oracle = testing::solve_homography_8x8(src, dst);
    if (std::abs(oracle[8]) < 1e-6L) continue;  // h22 := 1 undefined for this pair
    ++done;
    const Homography h = estimate_homography(
        Correspondences{{src.begin(), src.end()}, {dst.begin(), dst.end()}});
    const auto want = testing::canonical_entries(oracle);
    const auto got = h.entries();
    for (int i = 0; i < 9; ++i) worst_entry = std::max(worst_entry, std::abs(got[i] - want[i]));
    for (int i = 0; i < 4; ++i) worst_reproj = std::max(worst_reproj, distance(apply(h, src[i]), dst[i]));
  }
  const double secs = seconds_since(t0);
  o.check(worst_entry <= 1e-9, fmt("entry error %.3g", worst_entry));
  o.check(worst_reproj < 1e-9, fmt("reprojection %.3g px", worst_reproj));
  o.check(secs < 5.0, fmt("took %.2f s", secs));
  if (o.pass) o.detail = fmt("max entry diff %.2g, max reprojection %.2g px", worst_entry, worst_reproj);
  return o;
}

Outcome warp_identities() {
  Outcome o;
  std::mt19937_64 rng(77);
  for (int t = 0; t < 5; ++t) {
    const Frame src = testing::random_frame(53 + t, 37, rng);
    o.check(warp_frame(src, Homography::identity(), src.width(), src.height()) == src, "identity warp differs");
    std::uniform_int_distribution<int> sh(-9, 9);
    const int dx = sh(rng), dy = sh(rng);
    const Homography tr = Homography::from_entries({1, 0, static_cast<double>(dx), 0, 1,
                                                    static_cast<double>(dy), 0, 0, 1});
    const Rgb fill{7, 77, 177};
    const Frame out = warp_frame(src, tr, src.width(), src.height(), fill);
    bool same = true;
    for (int y = 0; y < src.height(); ++y) {
      for (int x = 0; x < src.width(); ++x) {
        const int sx = x - dx, sy = y - dy;
        const bool inside = sx >= 0 && sy >= 0 && sx < src.width() && sy < src.height();
        same = same && out.at(x, y) == (inside ? src.at(sx, sy) : fill);
      }
    }
    o.check(same, "integer translation is not an index shift");
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 400.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Homography h = Homography::from_entries(
        {1 + 0.1 * u(rng), 0.1 * u(rng), 20 * u(rng), 0.1 * u(rng), 1 + 0.1 * u(rng), 20 * u(rng),
         1e-4 * u(rng), 1e-4 * u(rng), 1});
    const Point2 x{p(rng), p(rng)};
    worst = std::max(worst, distance(apply(invert(h), apply(h, x)), x));
  }
  o.check(worst < 1e-9, fmt("round trip %.3g px", worst));
  if (o.pass) o.detail = fmt("round trip max %.2g px", worst);
  return o;
}

Outcome compositor_identities() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Frame a = testing::random_frame(48, 27, rng);
    const Frame b = testing::random_frame(48, 27, rng);
    const double alpha = ua(rng);
    o.check(overlay(a, b, 0.0) == a, "overlay alpha 0 is not A");
    o.check(overlay(a, b, 1.0) == b, "overlay alpha 1 is not B");
    o.check(overlay(a, b, alpha) == overlay(b, a, 1.0 - alpha), fmt("swap symmetry fails at %.17g", alpha));
    const Frame sbs = side_by_side(a, b);
    bool halves = sbs.width() == 96 && sbs.height() == 27;
    for (int y = 0; halves && y < 27; ++y) {
      for (int x = 0; x < 48; ++x) halves = halves && sbs.at(x, y) == a.at(x, y) && sbs.at(48 + x, y) == b.at(x, y);
    }
    o.check(halves, "side-by-side halves differ from inputs");
  }
  if (o.pass) o.detail = "20 pairs";
  return o;
}

TrialEval detect_trial(const Scenario& s, double tau) {
  const SyntheticPair p = generate(s);
  const auto da = detect_base_frame(p.clip_a, {tau, p.reference_a, s.roi_a()});
  const auto db = detect_base_frame(p.clip_b, {tau, p.reference_b, s.roi_b()});
  return {static_cast<int>(da.base_index), static_cast<int>(db.base_index), s.event_frame_a, s.event_frame_b};
}

Outcome noiseless_detection() {
  Outcome o;
  std::vector<TrialEval> trials;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TrialEval t = detect_trial(make_scenario(seed), kDefaultThreshold);
    o.check(t.detected_a == t.truth_a && t.detected_b == t.truth_b,
            "seed " + std::to_string(seed) + " detected " + std::to_string(t.detected_a) + "/" +
                std::to_string(t.detected_b) + " vs " + std::to_string(t.truth_a) + "/" + std::to_string(t.truth_b));
    trials.push_back(t);
  }
  const EvalSummary s = summarize(trials);
  o.check(s.mean == 0.0 && s.sd == 0.0, fmt("summary %.3f +- %.3f", s.mean, s.sd));
  if (o.pass) o.detail = fmt("%.3f +- %.3f", s.mean, s.sd);
  return o;
}

Outcome noisy_detection() {
  Outcome o;
  const auto t0 = Clock::now();
  ScenarioOptions opts;
  opts.noise_sigma = 8.0;
  std::vector<TrialEval> trials;
  for (std::uint64_t seed = 101; seed <= 110; ++seed) trials.push_back(detect_trial(make_scenario(seed, opts), 12.0));
  const EvalSummary s = summarize(trials);
  const double secs = seconds_since(t0);
  o.check(s.mean <= 2.0, fmt("mean difference %.3f frames", s.mean));
  o.check(secs < 60.0, fmt("took %.1f s", secs));
  o.detail = fmt("%.3f +- %.3f frames", s.mean, s.sd) + fmt(" in %.1f s", secs);
  return o;
}

Outcome metric_arithmetic() {
  Outcome o;
  const EvalSummary s = summarize({{5, 5, 5, 5}, {7, 5, 5, 5}});
  o.check(std::abs(s.mean - 1.0) <= 1e-12, fmt("mean %.17g", s.mean));
  o.check(std::abs(s.sd - std::sqrt(2.0)) <= 1e-12, fmt("sd %.17g", s.sd));
  const EvalSummary t = summarize({{0, 0, 0, 0}, {3, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 0}});
  o.check(std::abs(t.mean - 1.0) <= 1e-12, fmt("mean %.17g", t.mean));
  o.check(std::abs(t.sd - std::sqrt(2.0)) <= 1e-12, fmt("sd %.17g", t.sd));
  if (o.pass) o.detail = fmt("%.3f +- %.6f", s.mean, s.sd);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome cli_determinism() {
  Outcome o;
  testing::TempDir dir("accept");
  const std::string root = "\"" + dir.path().string() + "\"";
  const auto gen = testing::run_cli("synth --seed 9 --noise 8 --out " + root);
  o.check(gen.exit_code == 0, "synth failed");
  if (!o.pass) return o;
  const std::string cfg = "\"" + (dir / "config.json").string() + "\"";
  for (const char* run : {"run1", "run2"}) {
    const auto r = testing::run_cli("sync " + cfg + " --output \"" + (dir / run).string() + "\"");
    o.check(r.exit_code == 0, std::string("sync ") + run + " failed");
  }
  if (!o.pass) return o;
  std::size_t frames = 0;
  for (const auto& e : fs::directory_iterator(dir / "run1")) {
    if (e.path().extension() != ".ppm") continue;
    ++frames;
    o.check(slurp(e.path()) == slurp(dir / "run2" / e.path().filename()), e.path().filename().string() + " differs");
  }
  std::size_t frames2 = 0;
  for (const auto& e : fs::directory_iterator(dir / "run2")) frames2 += e.path().extension() == ".ppm";
  o.check(frames > 0 && frames == frames2, "frame counts differ");
  auto r1 = read_json(dir / "run1/report.json");
  auto r2 = read_json(dir / "run2/report.json");
  r1.erase("timing_ms");
  r2.erase("timing_ms");
  o.check(r1 == r2, "reports differ");
  o.check(slurp(dir / "run1/composite.json") == slurp(dir / "run2/composite.json"), "sidecars differ");
  if (o.pass) o.detail = std::to_string(frames) + " frames identical";
  return o;
}

Outcome shift_equivariance() {
  Outcome o;
  ScenarioOptions opts;
  opts.event_max = 60;
  int checks = 0;
  for (std::uint64_t seed = 201; seed <= 205; ++seed) {
    const Scenario base = make_scenario(seed, opts);
    const TrialEval t0 = detect_trial(base, kDefaultThreshold);
    for (int d : {1, 5, 25}) {
      Scenario s = base;
      s.event_frame_a += d;
      s.event_frame_b += d;
      const TrialEval t = detect_trial(s, kDefaultThreshold);
      o.check(t.detected_a == t0.detected_a + d && t.detected_b == t0.detected_b + d,
              "seed " + std::to_string(seed) + " shift " + std::to_string(d));
      ++checks;
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " shifted scenarios";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"homography matches 8x8 oracle", homography_oracle},
      {"warp identities", warp_identities},
      {"compositor identities", compositor_identities},
      {"noiseless detection exact", noiseless_detection},
      {"noisy detection mean <= 2 frames", noisy_detection},
      {"metric arithmetic", metric_arithmetic},
      {"end-to-end determinism", cli_determinism},
      {"shift equivariance", shift_equivariance},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

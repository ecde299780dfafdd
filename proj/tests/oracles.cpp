#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpsync::testing {

std::array<long double, 9> solve_homography_8x8(const std::array<Point2, 4>& src,
                                                const std::array<Point2, 4>& dst) {
  long double a[8][9] = {};
  for (int i = 0; i < 4; ++i) {
    const long double x = src[static_cast<std::size_t>(i)].x, y = src[static_cast<std::size_t>(i)].y;
    const long double u = dst[static_cast<std::size_t>(i)].x, v = dst[static_cast<std::size_t>(i)].y;
    long double* r0 = a[2 * i];
    long double* r1 = a[2 * i + 1];
    r0[0] = x; r0[1] = y; r0[2] = 1; r0[3] = 0; r0[4] = 0; r0[5] = 0; r0[6] = -u * x; r0[7] = -u * y; r0[8] = u;
    r1[0] = 0; r1[1] = 0; r1[2] = 0; r1[3] = x; r1[4] = y; r1[5] = 1; r1[6] = -v * x; r1[7] = -v * y; r1[8] = v;
  }
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-300L) throw std::runtime_error("singular 8x8 system");
    if (pivot != col) {
      for (int c = 0; c < 9; ++c) std::swap(a[col][c], a[pivot][c]);
    }
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c < 9; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<long double, 9> h{};
  for (int i = 0; i < 8; ++i) h[static_cast<std::size_t>(i)] = a[i][8] / a[i][i];
  h[8] = 1.0L;
  return h;
}

std::array<double, 9> canonical_entries(const std::array<long double, 9>& m) {
  long double norm = 0;
  for (long double v : m) norm += v * v;
  norm = std::sqrt(norm);
  std::array<long double, 9> n{};
  for (std::size_t i = 0; i < 9; ++i) n[i] = m[i] / norm;
  for (int i = 8; i >= 0; --i) {
    if (std::fabs(n[static_cast<std::size_t>(i)]) > 1e-12L) {
      if (n[static_cast<std::size_t>(i)] < 0) {
        for (auto& v : n) v = -v;
      }
      break;
    }
  }
  std::array<double, 9> out{};
  for (std::size_t i = 0; i < 9; ++i) out[i] = static_cast<double>(n[i]);
  return out;
}

std::vector<PixelCoord> brute_force_roi(Point2 p0, Point2 p1, int thickness, int width, int height) {
  std::vector<PixelCoord> out;
  const long double dx = p1.x - p0.x, dy = p1.y - p0.y;
  const long double len = std::sqrt(dx * dx + dy * dy);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      // Coordinates along and across the segment.
      const long double along = ((x - p0.x) * dx + (y - p0.y) * dy) / len;
      const long double across = std::fabs((x - p0.x) * dy - (y - p0.y) * dx) / len;
      if (along >= -1e-9L && along <= len + 1e-9L && across <= thickness / 2.0L + 1e-9L) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

std::uint8_t luma_oracle(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const long double y = std::round((299.0L * r + 587.0L * g + 114.0L * b) / 1000.0L);
  return static_cast<std::uint8_t>(std::min<long double>(255.0L, std::max<long double>(0.0L, y)));
}

double roi_mean_oracle(const Frame& frame, const Frame& reference, const std::vector<PixelCoord>& pixels) {
  long double sum = 0;
  for (const auto& p : pixels) {
    const Rgb f = frame.at(p.x, p.y);
    const Rgb r = reference.at(p.x, p.y);
    sum += std::fabs(static_cast<long double>(luma_oracle(f.r, f.g, f.b)) - luma_oracle(r.r, r.g, r.b));
  }
  return static_cast<double>(sum / pixels.size());
}

Frame bilinear_oracle(const Frame& src, int out_width, int out_height, Rgb fill,
                      const std::function<Point2(Point2)>& preimage) {
  Frame out(out_width, out_height, fill);
  for (int v = 0; v < out_height; ++v) {
    for (int u = 0; u < out_width; ++u) {
      const Point2 s = preimage({u + 0.5, v + 0.5});
      const double sx = s.x - 0.5;
      const double sy = s.y - 0.5;
      if (sx < 0 || sy < 0 || sx > src.width() - 1 || sy > src.height() - 1) continue;
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0, fy = sy - y0;
      const auto at = [&](int x, int y, int c) -> double {
        x = std::min(x, src.width() - 1);
        y = std::min(y, src.height() - 1);
        const Rgb p = src.at(x, y);
        return c == 0 ? p.r : c == 1 ? p.g : p.b;
      };
      std::array<std::uint8_t, 3> ch{};
      for (int c = 0; c < 3; ++c) {
        const double val = (1 - fx) * (1 - fy) * at(x0, y0, c) + fx * (1 - fy) * at(x0 + 1, y0, c) +
                           (1 - fx) * fy * at(x0, y0 + 1, c) + fx * fy * at(x0 + 1, y0 + 1, c);
        ch[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(std::clamp(std::round(val), 0.0, 255.0));
      }
      out.set(u, v, {ch[0], ch[1], ch[2]});
    }
  }
  return out;
}

std::optional<Point2> dark_centroid(const Frame& frame, int dark_below) {
  double sx = 0, sy = 0;
  long n = 0;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const Rgb p = frame.at(x, y);
      if (luma_oracle(p.r, p.g, p.b) < dark_below) {
        sx += x + 0.5;
        sy += y + 0.5;
        ++n;
      }
    }
  }
  if (n == 0) return std::nullopt;
  return Point2{sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

}  // namespace jumpsync::testing

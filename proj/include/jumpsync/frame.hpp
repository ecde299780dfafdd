#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jumpsync {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// One 8-bit RGB raster, row-major, top row first, channels interleaved.
class Frame {
 public:
  Frame() = default;
  /// Allocates a width x height frame filled with `fill`.
  Frame(int width, int height, Rgb fill = {});
  /// Adopts an existing interleaved RGB buffer; its size must be w*h*3.
  Frame(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::span<const std::uint8_t> row(int y) const {
    return std::span(pixels_).subspan(row_offset(y), row_bytes());
  }
  std::span<std::uint8_t> row(int y) {
    return std::span(pixels_).subspan(row_offset(y), row_bytes());
  }

  Rgb at(int x, int y) const {
    const std::size_t i = pixel_offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = pixel_offset(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  bool same_size(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t row_bytes() const { return static_cast<std::size_t>(width_) * 3; }
  std::size_t row_offset(int y) const { return static_cast<std::size_t>(y) * row_bytes(); }
  std::size_t pixel_offset(int x, int y) const {
    return row_offset(y) + static_cast<std::size_t>(x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Frames per second as an exact ratio (e.g. 30000/1001).
struct FrameRate {
  std::int64_t num = 120;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Number of frames covering `seconds`, rounded to nearest.
  int frames_for(double seconds) const {
    return static_cast<int>(std::lround(seconds * value()));
  }
  std::string to_string() const;
  /// Parses an integer ("120") or a ratio ("120000/1001").
  static FrameRate parse(const std::string& text);

  friend bool operator==(const FrameRate&, const FrameRate&) = default;
};

/// Ordered frame sequence sharing one raster size.
class Clip {
 public:
  Clip() = default;
  Clip(std::vector<Frame> frames, FrameRate fps);

  const std::vector<Frame>& frames() const { return frames_; }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  FrameRate fps() const { return fps_; }
  int width() const { return frames_.empty() ? 0 : frames_.front().width(); }
  int height() const { return frames_.empty() ? 0 : frames_.front().height(); }

  friend bool operator==(const Clip&, const Clip&) = default;

 private:
  std::vector<Frame> frames_;
  FrameRate fps_;
};

/// 8-bit luminance samples, row-major.
struct LumaPlane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  std::uint8_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

/// Rec.601 luma with half-away-from-zero rounding, computed in exact integer
/// arithmetic: Y = (299 R + 587 G + 114 B + 500) / 1000.
constexpr std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

/// Round half away from zero, then clamp to [0, 255].
inline std::uint8_t clamp_round_u8(double v) {
  const double r = std::round(v);
  if (!(r > 0.0)) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace jumpsync

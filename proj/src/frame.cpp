#include "jumpsync/frame.hpp"

#include <charconv>
#include <numeric>

#include "jumpsync/error.hpp"

namespace jumpsync {

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw ConfigError("frame dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
}

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError("malformed frame rate '" + whole + "'");
  }
  return value;
}

}  // namespace

Frame::Frame(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (pixels_.size() != expected) {
    throw ConfigError("pixel buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                      std::to_string(expected));
  }
}

std::string FrameRate::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

FrameRate FrameRate::parse(const std::string& text) {
  const auto slash = text.find('/');
  FrameRate fps;
  if (slash == std::string::npos) {
    fps = {parse_int(text, text), 1};
  } else {
    fps = {parse_int(std::string_view(text).substr(0, slash), text),
           parse_int(std::string_view(text).substr(slash + 1), text)};
  }
  if (fps.num <= 0 || fps.den <= 0) throw ConfigError("frame rate must be positive: " + text);
  const auto g = std::gcd(fps.num, fps.den);
  return {fps.num / g, fps.den / g};
}

Clip::Clip(std::vector<Frame> frames, FrameRate fps) : frames_(std::move(frames)), fps_(fps) {
  if (fps_.num <= 0 || fps_.den <= 0) throw ConfigError("frame rate must be positive");
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (!frames_[i].same_size(frames_[0])) {
      throw ConfigError("frame " + std::to_string(i) + " is " + std::to_string(frames_[i].width()) +
                        "x" + std::to_string(frames_[i].height()) + ", clip is " +
                        std::to_string(frames_[0].width()) + "x" +
                        std::to_string(frames_[0].height()));
    }
  }
}

}  // namespace jumpsync

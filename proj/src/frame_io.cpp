#include "jumpsync/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "jumpsync/error.hpp"
#include "jumpsync/kernels.hpp"

namespace fs = std::filesystem;

namespace jumpsync {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (is_space(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 24)) throw IoError(std::string("PPM ") + what + " too large");
      ++pos_;
    }
    if (pos_ == start) throw IoError(std::string("malformed PPM header: expected ") + what);
    return value;
  }

  std::size_t& pos() { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

PathPattern::PathPattern(const std::string& pattern) {
  const auto pct = pattern.find('%');
  if (pct == std::string::npos) {
    dir_ = fs::path(pattern);
    prefix_.clear();
    suffix_ = ".ppm";
    width_ = 6;
    return;
  }
  if (pattern.find('%', pct + 1) != std::string::npos) {
    throw ConfigError("path pattern has more than one conversion: " + pattern);
  }
  // Expect %0Nd.
  std::size_t i = pct + 1;
  if (i >= pattern.size() || pattern[i] != '0') {
    throw ConfigError("path pattern must use a zero-padded index (%0Nd): " + pattern);
  }
  ++i;
  int width = 0;
  while (i < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[i]))) {
    width = width * 10 + (pattern[i] - '0');
    ++i;
  }
  if (width < 1 || width > 18 || i >= pattern.size() || pattern[i] != 'd') {
    throw ConfigError("path pattern must use a zero-padded index (%0Nd): " + pattern);
  }
  const std::string tail = pattern.substr(i + 1);
  if (tail.find('/') != std::string::npos) {
    throw ConfigError("the index must be part of the file name: " + pattern);
  }
  // "dir/frame_" splits into directory "dir" and prefix "frame_".
  const std::string head_str = pattern.substr(0, pct);
  const auto slash = head_str.find_last_of('/');
  if (slash == std::string::npos) {
    dir_ = ".";
    prefix_ = head_str;
  } else {
    dir_ = head_str.substr(0, slash == 0 ? 1 : slash);
    prefix_ = head_str.substr(slash + 1);
  }
  suffix_ = tail;
  width_ = width;
}

fs::path PathPattern::path_for(int index) const {
  if (index < 0) throw ConfigError("negative frame index");
  std::string digits = std::to_string(index);
  if (static_cast<int>(digits.size()) < width_) {
    digits.insert(0, static_cast<std::size_t>(width_) - digits.size(), '0');
  }
  return dir_ / (prefix_ + digits + suffix_);
}

std::vector<int> PathPattern::list_indices() const {
  std::vector<int> indices;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return indices;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() != prefix_.size() + static_cast<std::size_t>(width_) + suffix_.size()) continue;
    if (name.compare(0, prefix_.size(), prefix_) != 0) continue;
    if (name.compare(name.size() - suffix_.size(), suffix_.size(), suffix_) != 0) continue;
    const std::string digits = name.substr(prefix_.size(), static_cast<std::size_t>(width_));
    if (!std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      continue;
    }
    if (digits.size() > 9) continue;
    indices.push_back(std::stoi(digits));
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

Frame decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw IoError("not a binary PPM (missing P6 magic)");
  }
  HeaderReader header(bytes.subspan(2));
  const long width = header.read_uint("width");
  const long height = header.read_uint("height");
  const long maxval = header.read_uint("maxval");
  if (width < 1 || height < 1) throw IoError("PPM has zero dimension");
  if (maxval != 255) throw IoError("unsupported PPM maxval " + std::to_string(maxval));
  std::size_t pos = header.pos() + 2;
  if (pos >= bytes.size() || !is_space(bytes[pos])) {
    throw IoError("malformed PPM header: missing separator after maxval");
  }
  ++pos;
  const std::size_t body = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (bytes.size() - pos < body) {
    throw IoError("truncated PPM: expected " + std::to_string(body) + " pixel bytes, found " +
                  std::to_string(bytes.size() - pos));
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(pos + body));
  return Frame(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

Frame read_ppm(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_ppm(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_ppm(const Frame& frame) {
  const std::string header =
      "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), frame.pixels().begin(), frame.pixels().end());
  return out;
}

void write_ppm(const Frame& frame, const fs::path& path) {
  if (frame.empty()) throw IoError("cannot write an empty frame to " + path.string());
  const auto bytes = encode_ppm(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Clip read_frame_sequence(const std::string& path_pattern, FrameRate fps) {
  const PathPattern pattern(path_pattern);
  const auto indices = pattern.list_indices();
  if (indices.empty()) throw IoError("no frames found for " + path_pattern);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != static_cast<int>(i)) {
      throw IoError("gap at index " + std::to_string(i) + " in " + path_pattern);
    }
  }
  std::vector<Frame> frames;
  frames.reserve(indices.size());
  for (int index : indices) {
    Frame f = read_ppm(pattern.path_for(index));
    if (!frames.empty() && !f.same_size(frames.front())) {
      throw IoError("dimension mismatch: " + pattern.path_for(index).string() + " is " +
                    std::to_string(f.width()) + "x" + std::to_string(f.height()) +
                    ", expected " + std::to_string(frames.front().width()) + "x" +
                    std::to_string(frames.front().height()));
    }
    frames.push_back(std::move(f));
  }
  return Clip(std::move(frames), fps);
}

void write_frame_sequence(const Clip& clip, const std::string& path_pattern) {
  if (clip.empty()) throw IoError("refusing to write an empty clip to " + path_pattern);
  const PathPattern pattern(path_pattern);
  std::error_code ec;
  fs::create_directories(pattern.directory(), ec);
  if (ec) throw IoError("cannot create " + pattern.directory().string() + ": " + ec.message());
  for (std::size_t i = 0; i < clip.size(); ++i) {
    write_ppm(clip[i], pattern.path_for(static_cast<int>(i)));
  }
}

LumaPlane to_luma(const Frame& frame) {
  LumaPlane plane{frame.width(), frame.height(), {}};
  plane.values.resize(static_cast<std::size_t>(frame.width()) * static_cast<std::size_t>(frame.height()));
  kernels::parallel::luma(frame.pixels(), plane.values);
  return plane;
}

}  // namespace jumpsync

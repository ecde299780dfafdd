#pragma once

#include <filesystem>
#include <string>

#include "jumpsync/frame.hpp"

namespace jumpsync {

/// A numbered file sequence such as "clips/a/%06d.ppm".
///
/// The pattern must contain exactly one zero-padded integer conversion
/// ("%0Nd"). A pattern without '%' names a directory and expands to
/// "<dir>/%06d.ppm".
class PathPattern {
 public:
  explicit PathPattern(const std::string& pattern);

  std::filesystem::path path_for(int index) const;
  const std::filesystem::path& directory() const { return dir_; }

  /// Indices of files in the directory whose names match the pattern,
  /// ascending. Names with a different digit count are ignored.
  std::vector<int> list_indices() const;

 private:
  std::filesystem::path dir_;
  std::string prefix_;
  std::string suffix_;
  int width_ = 6;
};

/// Parses a binary PPM (P6, maxval 255). Header comments are skipped.
Frame read_ppm(const std::filesystem::path& path);
Frame decode_ppm(std::span<const std::uint8_t> bytes);

/// Writes "P6\n<w> <h>\n255\n" followed by the raw RGB bytes.
void write_ppm(const Frame& frame, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_ppm(const Frame& frame);

/// Reads a dense 0-based sequence. Fails on a missing index instead of
/// skipping it, and on frames of differing size.
Clip read_frame_sequence(const std::string& path_pattern, FrameRate fps = {});

/// Writes every frame of a non-empty clip; creates the directory if needed.
void write_frame_sequence(const Clip& clip, const std::string& path_pattern);

LumaPlane to_luma(const Frame& frame);

}  // namespace jumpsync

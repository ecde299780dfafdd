#pragma once

#include <stdexcept>
#include <string>

namespace jumpsync {

/// Base class for every error raised by the library. The subclass tells the
/// command-line front end which exit status to use.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration, bad arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The event could not be located in a clip.
class DetectionError : public Error {
 public:
  using Error::Error;
};

/// Degenerate correspondences, singular transforms, points at infinity.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// File system failures and malformed image files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jumpsync

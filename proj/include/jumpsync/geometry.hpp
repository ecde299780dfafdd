#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "jumpsync/frame.hpp"

namespace jumpsync {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Projective transform between two image planes, stored in canonical form:
/// unit Frobenius norm with the last significant entry (row-major) positive.
/// Construction fails for matrices with |det| <= 1e-12 after canonicalization.
class Homography {
 public:
  explicit Homography(const Eigen::Matrix3d& m);

  static Homography identity();
  /// Row-major entries h00..h22.
  static Homography from_entries(const std::array<double, 9>& entries);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }
  std::array<double, 9> entries() const;

  friend bool operator==(const Homography& a, const Homography& b) { return a.m_ == b.m_; }

 private:
  Eigen::Matrix3d m_;
};

/// Point correspondences src[i] -> dst[i]. Requires at least four pairs.
struct Correspondences {
  std::vector<Point2> src;
  std::vector<Point2> dst;
};

/// Scales to unit Frobenius norm and fixes the sign so that the last entry
/// with magnitude above 1e-12 is positive. Idempotent bit-for-bit.
Eigen::Matrix3d canonicalize(const Eigen::Matrix3d& m);

/// Normalized DLT: both point sets are conditioned (centroid at the origin,
/// mean distance sqrt(2)), the homogeneous system is solved for the right
/// singular vector of the smallest singular value, then de-conditioned.
Homography estimate_homography(const Correspondences& c);

/// (X'/W', Y'/W') with (X', Y', W') = H (x, y, 1). Throws when |W'| <= 1e-12.
Point2 apply(const Homography& h, Point2 p);

Homography invert(const Homography& h);

/// The transform `after * before` (apply `before` first).
Homography compose(const Homography& after, const Homography& before);

/// Inverse-mapped bilinear warp. Destination pixel (u, v) samples the source
/// at invert(h) applied to the pixel center (u + 0.5, v + 0.5). Samples whose
/// interpolation support leaves the source raster get `fill`.
Frame warp_frame(const Frame& src, const Homography& h, int out_width, int out_height,
                 Rgb fill = {});

}  // namespace jumpsync

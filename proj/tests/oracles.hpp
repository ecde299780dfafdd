#pragma once

// Independent reference computations used to freeze expected values. None of
// these call into the library's numerical paths.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "jumpsync/frame.hpp"
#include "jumpsync/geometry.hpp"
#include "jumpsync/temporal.hpp"

namespace jumpsync::testing {

/// Solves the 8x8 system for h00..h21 with h22 := 1, by Gaussian elimination
/// with partial pivoting in extended precision.
std::array<long double, 9> solve_homography_8x8(const std::array<Point2, 4>& src,
                                                const std::array<Point2, 4>& dst);

/// Unit Frobenius norm, last entry above 1e-12 in magnitude made positive.
std::array<double, 9> canonical_entries(const std::array<long double, 9>& m);

/// Every pixel of the raster tested against the thick-segment rule.
std::vector<PixelCoord> brute_force_roi(Point2 p0, Point2 p1, int thickness, int width, int height);

/// round(0.299 R + 0.587 G + 0.114 B), ties away from zero.
std::uint8_t luma_oracle(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Direct per-pixel sum of |luma(frame) - luma(reference)| over the pixels.
double roi_mean_oracle(const Frame& frame, const Frame& reference, const std::vector<PixelCoord>& pixels);

/// Bilinear inverse-mapping warp evaluated pixel by pixel. `preimage` maps a
/// destination pixel center to a source point in continuous coordinates.
Frame bilinear_oracle(const Frame& src, int out_width, int out_height, Rgb fill,
                      const std::function<Point2(Point2)>& preimage);

/// Centroid of pixel centers whose luma is below `dark_below`.
std::optional<Point2> dark_centroid(const Frame& frame, int dark_below);

}  // namespace jumpsync::testing

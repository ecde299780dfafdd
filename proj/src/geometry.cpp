#include "jumpsync/geometry.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "jumpsync/error.hpp"
#include "jumpsync/kernels.hpp"

namespace jumpsync {

namespace {

constexpr double kMinDet = 1e-12;
constexpr double kSignificant = 1e-12;
constexpr double kDegenerate = 1e-9;

// Hartley conditioning: centroid to the origin, mean distance sqrt(2).
struct Conditioner {
  double scale = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d forward() const {
    Eigen::Matrix3d t;
    t << scale, 0, -scale * cx, 0, scale, -scale * cy, 0, 0, 1;
    return t;
  }
  Eigen::Matrix3d backward() const {
    Eigen::Matrix3d t;
    t << 1.0 / scale, 0, cx, 0, 1.0 / scale, cy, 0, 0, 1;
    return t;
  }
  Point2 operator()(Point2 p) const { return {scale * (p.x - cx), scale * (p.y - cy)}; }
};

Conditioner condition(const std::vector<Point2>& pts, const char* which) {
  Conditioner c;
  for (const auto& p : pts) {
    c.cx += p.x;
    c.cy += p.y;
  }
  c.cx /= static_cast<double>(pts.size());
  c.cy /= static_cast<double>(pts.size());
  double mean_dist = 0.0;
  for (const auto& p : pts) mean_dist += std::hypot(p.x - c.cx, p.y - c.cy);
  mean_dist /= static_cast<double>(pts.size());
  if (!(mean_dist > 0.0)) {
    throw GeometryError(std::string("degenerate configuration: all ") + which +
                        " points coincide");
  }
  c.scale = std::sqrt(2.0) / mean_dist;
  return c;
}

double cross(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

void check_configuration(const std::vector<Point2>& normalized, const char* which) {
  const std::size_t n = normalized.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(normalized[i], normalized[j]) <= kDegenerate) {
        throw GeometryError(std::string("duplicate ") + which + " points " + std::to_string(i) +
                            " and " + std::to_string(j));
      }
    }
  }
  if (n != 4) return;  // larger sets are checked through the design matrix rank
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::array<Point2, 3> t{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != skip) t[k++] = normalized[i];
    }
    if (std::abs(cross(t[0], t[1], t[2])) <= kDegenerate) {
      throw GeometryError(std::string("degenerate configuration: three ") + which +
                          " points are collinear");
    }
  }
}

}  // namespace

Eigen::Matrix3d canonicalize(const Eigen::Matrix3d& m) {
  if (!m.allFinite()) throw GeometryError("homography has non-finite entries");
  const double norm = m.norm();
  if (!(norm > 0.0)) throw GeometryError("homography is the zero matrix");
  Eigen::Matrix3d r = m;
  if (std::abs(norm - 1.0) > 4 * std::numeric_limits<double>::epsilon()) r /= norm;
  for (int i = 8; i >= 0; --i) {
    const double v = r(i / 3, i % 3);
    if (std::abs(v) > kSignificant) {
      if (v < 0) r = -r;
      break;
    }
  }
  return r;
}

Homography::Homography(const Eigen::Matrix3d& m) : m_(canonicalize(m)) {
  if (!(std::abs(m_.determinant()) > kMinDet)) {
    throw GeometryError("homography is singular");
  }
}

Homography Homography::identity() { return Homography(Eigen::Matrix3d::Identity()); }

Homography Homography::from_entries(const std::array<double, 9>& e) {
  Eigen::Matrix3d m;
  m << e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8];
  return Homography(m);
}

std::array<double, 9> Homography::entries() const {
  std::array<double, 9> e{};
  for (int i = 0; i < 9; ++i) e[static_cast<std::size_t>(i)] = m_(i / 3, i % 3);
  return e;
}

Homography estimate_homography(const Correspondences& c) {
  if (c.src.size() != c.dst.size()) {
    throw GeometryError("correspondence lists differ in length");
  }
  if (c.src.size() < 4) throw GeometryError("at least 4 correspondences are required");
  for (std::size_t i = 0; i < c.src.size(); ++i) {
    if (!std::isfinite(c.src[i].x) || !std::isfinite(c.src[i].y) ||
        !std::isfinite(c.dst[i].x) || !std::isfinite(c.dst[i].y)) {
      throw GeometryError("non-finite correspondence " + std::to_string(i));
    }
  }

  const Conditioner cs = condition(c.src, "source");
  const Conditioner cd = condition(c.dst, "destination");
  const std::size_t n = c.src.size();
  std::vector<Point2> ns(n);
  std::vector<Point2> nd(n);
  for (std::size_t i = 0; i < n; ++i) {
    ns[i] = cs(c.src[i]);
    nd[i] = cd(c.dst[i]);
  }
  check_configuration(ns, "source");
  check_configuration(nd, "destination");

  // Two rows per correspondence; padded with zero rows to be at least square
  // so the full right singular basis is available.
  const Eigen::Index rows = std::max<Eigen::Index>(static_cast<Eigen::Index>(2 * n), 9);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ns[i].x, y = ns[i].y, u = nd[i].x, v = nd[i].y;
    const auto r = static_cast<Eigen::Index>(2 * i);
    a.row(r) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
    a.row(r + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(7) > kDegenerate * sv(0))) {
    throw GeometryError("degenerate configuration: correspondences do not determine a homography");
  }
  // Every point fixed: the solution is exactly the identity, which the SVD
  // only reproduces to rounding.
  if (c.src == c.dst) return Homography::identity();
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  return Homography(cd.backward() * hn * cs.forward());
}

Point2 apply(const Homography& h, Point2 p) {
  const auto& m = h.matrix();
  const double w = m(2, 0) * p.x + m(2, 1) * p.y + m(2, 2);
  if (!(std::abs(w) > 1e-12)) throw GeometryError("point maps to infinity");
  return {(m(0, 0) * p.x + m(0, 1) * p.y + m(0, 2)) / w,
          (m(1, 0) * p.x + m(1, 1) * p.y + m(1, 2)) / w};
}

Homography invert(const Homography& h) {
  if (!(std::abs(h.matrix().determinant()) > kMinDet)) {
    throw GeometryError("cannot invert a singular homography");
  }
  return Homography(h.matrix().inverse());
}

Homography compose(const Homography& after, const Homography& before) {
  return Homography(after.matrix() * before.matrix());
}

Frame warp_frame(const Frame& src, const Homography& h, int out_width, int out_height, Rgb fill) {
  if (out_width < 1 || out_height < 1) {
    throw ConfigError("warp output dimensions must be positive");
  }
  if (src.empty()) throw ConfigError("cannot warp an empty frame");
  Frame out(out_width, out_height, fill);
  kernels::parallel::warp(src, invert(h).matrix(), fill, out);
  return out;
}

}  // namespace jumpsync

#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Core>

#include "gavo/camera.hpp"

namespace gavo {

/// Row-major scalar grid; image(v, u) is row v, column u.
using Image = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Bilinear interpolation at continuous (u, v). Returns nullopt unless every
/// pixel carrying non-zero weight lies inside the image, i.e. unless
/// 0 <= u <= width-1 and 0 <= v <= height-1.
template <typename Derived>
std::optional<typename Derived::Scalar> sample_bilinear(
    const Eigen::DenseBase<Derived>& image, double u, double v)
{
  using Scalar = typename Derived::Scalar;
  const Eigen::Index w = image.cols();
  const Eigen::Index h = image.rows();
  if (!(u >= 0.0 && v >= 0.0 && u <= double(w - 1) && v <= double(h - 1)))
    return std::nullopt;

  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const auto u0 = static_cast<Eigen::Index>(fu);
  const auto v0 = static_cast<Eigen::Index>(fv);
  const double au = u - fu;
  const double av = v - fv;
  // On the last row/column the fractional weight is exactly zero.
  const Eigen::Index u1 = u0 + 1 < w ? u0 + 1 : u0;
  const Eigen::Index v1 = v0 + 1 < h ? v0 + 1 : v0;

  const double top = (1.0 - au) * image(v0, u0) + au * image(v0, u1);
  const double bottom = (1.0 - au) * image(v1, u0) + au * image(v1, u1);
  return static_cast<Scalar>((1.0 - av) * top + av * bottom);
}

/// One RGB-D observation: intensity in [0, 1], metric depth with 0 marking
/// missing measurements, and the intrinsics of this resolution.
struct RgbdFrame
{
  Image intensity;
  Image depth;
  CameraIntrinsicsd intrinsics;

  Eigen::Index width() const { return intensity.cols(); }
  Eigen::Index height() const { return intensity.rows(); }
};

}  // namespace gavo

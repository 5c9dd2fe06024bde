#pragma once

#include <cmath>

#include <Eigen/Core>

#include "gavo/errors.hpp"

namespace gavo {

/// Pinhole intrinsics in pixels. Lens distortion is not modelled.
template <typename Scalar>
struct CameraIntrinsics
{
  Scalar fx = 1;
  Scalar fy = 1;
  Scalar cx = 0;
  Scalar cy = 0;

  bool valid() const
  {
    using std::isfinite;
    return fx > 0 && fy > 0 && isfinite(fx) && isfinite(fy) && isfinite(cx) &&
           isfinite(cy);
  }

  /// Intrinsics of an image decimated by two: focal lengths halve and the
  /// principal point follows pixel centres, c' = (c + 0.5) / 2 - 0.5.
  CameraIntrinsics halved() const
  {
    return {fx / 2, fy / 2, (cx + Scalar(0.5)) / 2 - Scalar(0.5),
            (cy + Scalar(0.5)) / 2 - Scalar(0.5)};
  }

  bool operator==(const CameraIntrinsics&) const = default;
};

using CameraIntrinsicsd = CameraIntrinsics<double>;

/// Pixel (u, v) at metric depth d to a camera-frame point.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> back_project(Scalar u, Scalar v, Scalar d,
                                         const CameraIntrinsics<Scalar>& k)
{
  if (!(d > Scalar(0)))
    throw InvalidDepth("back_project requires positive depth");
  return {(u - k.cx) / k.fx * d, (v - k.cy) / k.fy * d, d};
}

/// Camera-frame point to continuous pixel coordinates.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> project(
    const Eigen::MatrixBase<Derived>& p,
    const CameraIntrinsics<typename Derived::Scalar>& k)
{
  using Scalar = typename Derived::Scalar;
  if (!(p[2] > Scalar(0)))
    throw BehindCamera("project requires a point in front of the camera");
  return {p[0] * k.fx / p[2] + k.cx, p[1] * k.fy / p[2] + k.cy};
}

}  // namespace gavo

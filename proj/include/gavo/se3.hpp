#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "gavo/errors.hpp"

namespace gavo {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Six-parameter rigid motion, stored as [v1 v2 v3 w1 w2 w3]: linear part
/// first, angular part second. This ordering is shared by every module,
/// including the genetic optimizer which treats the six coefficients as genes.
template <typename Scalar>
class Twist
{
public:
  using Coefficients = Vector6<Scalar>;

  Twist() : coeffs_(Coefficients::Zero()) {}
  explicit Twist(const Coefficients& coeffs) : coeffs_(coeffs) {}
  Twist(const Vector3<Scalar>& v, const Vector3<Scalar>& w)
  {
    coeffs_ << v, w;
  }

  static Twist Zero() { return Twist(); }

  const Coefficients& coeffs() const { return coeffs_; }
  Coefficients& coeffs() { return coeffs_; }

  auto v() const { return coeffs_.template head<3>(); }
  auto v() { return coeffs_.template head<3>(); }
  auto w() const { return coeffs_.template tail<3>(); }
  auto w() { return coeffs_.template tail<3>(); }

  Scalar operator[](int i) const { return coeffs_[i]; }
  Scalar& operator[](int i) { return coeffs_[i]; }

  Twist operator-() const { return Twist(Coefficients(-coeffs_)); }

  bool operator==(const Twist& other) const { return coeffs_ == other.coeffs_; }

  template <typename Other>
  Twist<Other> cast() const
  {
    return Twist<Other>(coeffs_.template cast<Other>());
  }

private:
  Coefficients coeffs_;
};

/// Element of SE(3): x -> R x + T.
template <typename Scalar>
struct RigidTransform
{
  Matrix3<Scalar> R = Matrix3<Scalar>::Identity();
  Vector3<Scalar> T = Vector3<Scalar>::Zero();

  static RigidTransform Identity() { return {}; }

  static RigidTransform Translation(const Vector3<Scalar>& t)
  {
    return {Matrix3<Scalar>::Identity(), t};
  }

  Matrix4<Scalar> matrix() const
  {
    Matrix4<Scalar> g = Matrix4<Scalar>::Identity();
    g.template topLeftCorner<3, 3>() = R;
    g.template topRightCorner<3, 1>() = T;
    return g;
  }
};

using Twistd = Twist<double>;
using RigidTransformd = RigidTransform<double>;

template <typename Derived>
Matrix3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& w)
{
  using Scalar = typename Derived::Scalar;
  Matrix3<Scalar> m;
  m << Scalar(0), -w[2], w[1],
       w[2], Scalar(0), -w[0],
       -w[1], w[0], Scalar(0);
  return m;
}

/// 4x4 generator matrix: skew(w) in the top-left block, v in the last
/// column, zero bottom row.
template <typename Scalar>
Matrix4<Scalar> hat(const Twist<Scalar>& xi)
{
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m.template topLeftCorner<3, 3>() = skew(xi.w());
  m.template topRightCorner<3, 1>() = xi.v();
  return m;
}

/// Closed-form exponential of hat(xi). Below a rotation angle of 1e-8 the
/// Rodrigues coefficients are replaced by their second-order Taylor
/// expansions.
template <typename Scalar>
RigidTransform<Scalar> exp_twist(const Twist<Scalar>& xi)
{
  using std::cos;
  using std::sin;
  using std::sqrt;

  const Vector3<Scalar> w = xi.w();
  const Scalar theta_sq = w.squaredNorm();
  const Scalar theta = sqrt(theta_sq);

  Scalar a, b, c;
  if (theta < Scalar(1e-8)) {
    a = Scalar(1) - theta_sq / Scalar(6);
    b = Scalar(0.5) - theta_sq / Scalar(24);
    c = Scalar(1) / Scalar(6) - theta_sq / Scalar(120);
  } else {
    const Scalar s = sin(theta);
    const Scalar co = cos(theta);
    a = s / theta;
    b = (Scalar(1) - co) / theta_sq;
    c = (theta - s) / (theta_sq * theta);
  }

  const Matrix3<Scalar> W = skew(w);
  const Matrix3<Scalar> W2 = W * W;
  const Matrix3<Scalar> I = Matrix3<Scalar>::Identity();

  RigidTransform<Scalar> g;
  g.R = I + a * W + b * W2;
  g.T = (I + b * W + c * W2) * xi.v();
  return g;
}

template <typename Scalar>
RigidTransform<Scalar> compose(const RigidTransform<Scalar>& a,
                               const RigidTransform<Scalar>& b)
{
  return {a.R * b.R, a.R * b.T + a.T};
}

template <typename Scalar>
RigidTransform<Scalar> inverse(const RigidTransform<Scalar>& a)
{
  const Matrix3<Scalar> Rt = a.R.transpose();
  return {Rt, -(Rt * a.T)};
}

/// a^-1 * b. The translation is R_a^T (T_b - T_a), which is exactly zero
/// when a and b share a translation.
template <typename Scalar>
RigidTransform<Scalar> relative(const RigidTransform<Scalar>& a, const RigidTransform<Scalar>& b)
{
  const Matrix3<Scalar> Rt = a.R.transpose();
  return {Rt * b.R, Rt * (b.T - a.T)};
}

template <typename Scalar, typename Derived>
Vector3<Scalar> transform_point(const RigidTransform<Scalar>& g,
                                const Eigen::MatrixBase<Derived>& p)
{
  return g.R * p + g.T;
}

template <typename Scalar>
RigidTransform<Scalar> operator*(const RigidTransform<Scalar>& a,
                                 const RigidTransform<Scalar>& b)
{
  return compose(a, b);
}

/// Rotation from a unit quaternion given in (x, y, z, w) storage order, as
/// found in TUM trajectory files.
template <typename Scalar>
RigidTransform<Scalar> from_quaternion(const Eigen::Matrix<Scalar, 4, 1>& q_xyzw,
                                       const Vector3<Scalar>& t)
{
  using std::abs;
  if (abs(q_xyzw.norm() - Scalar(1)) > Scalar(1e-6))
    throw NonUnitQuaternion("quaternion norm deviates from 1 by more than 1e-6");

  const Scalar x = q_xyzw[0], y = q_xyzw[1], z = q_xyzw[2], w = q_xyzw[3];
  RigidTransform<Scalar> g;
  g.R << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
         2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
         2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  g.T = t;
  return g;
}

/// Unit quaternion (x, y, z, w) of a rotation matrix, with w >= 0.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> to_quaternion(const Matrix3<Scalar>& R)
{
  Eigen::Quaternion<Scalar> q(R);
  q.normalize();
  if (q.w() < Scalar(0))
    q.coeffs() = -q.coeffs();
  return q.coeffs();  // Eigen stores (x, y, z, w)
}

/// Angle of the rotation part, in radians.
template <typename Scalar>
Scalar rotation_angle(const RigidTransform<Scalar>& g)
{
  using std::atan2;
  // atan2 keeps full precision near 0 and pi, where acos of the trace does not.
  const Matrix3<Scalar>& R = g.R;
  const Vector3<Scalar> axis(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  const Scalar c = (R.trace() - Scalar(1)) / Scalar(2);
  return atan2(axis.norm() / Scalar(2), c);
}

}  // namespace gavo

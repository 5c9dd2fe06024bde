#include "gavo/photometric.hpp"

#include <cmath>
#include <string>

#include "gavo/camera.hpp"
#include "gavo/errors.hpp"

namespace gavo {

PhotometricObjective::PhotometricObjective(const RgbdFrame& reference,
                                           const RgbdFrame& target)
  : target_(&target)
{
  if (reference.width() != target.width() || reference.height() != target.height() ||
      reference.depth.rows() != reference.height() ||
      reference.depth.cols() != reference.width())
    throw DimensionMismatch("reference and target frames differ in size");
  if (!(reference.intrinsics == target.intrinsics))
    throw DimensionMismatch("reference and target frames differ in intrinsics");

  const auto pixels = static_cast<double>(reference.width() * reference.height());
  min_valid_count_ = static_cast<std::size_t>(std::ceil(kMinValidFraction * pixels));

  const auto& k = reference.intrinsics;
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector4d> anchors;
  for (Eigen::Index v = 0; v < reference.height(); ++v) {
    for (Eigen::Index u = 0; u < reference.width(); ++u) {
      const double d = reference.depth(v, u);
      if (!(d > 0))
        continue;
      const Eigen::Vector3d x = back_project(double(u), double(v), d, k);
      points.push_back(x);
      anchors.emplace_back(double(u), double(v), x.x() / x.z(), x.y() / x.z());
      intensities_.push_back(reference.intensity(v, u));
    }
  }
  points_.resize(3, static_cast<Eigen::Index>(points.size()));
  anchors_.resize(4, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    points_.col(static_cast<Eigen::Index>(i)) = points[i];
    anchors_.col(static_cast<Eigen::Index>(i)) = anchors[i];
  }
}

ResidualStats PhotometricObjective::residuals(const Twistd& xi) const
{
  const RigidTransformd g = exp_twist(xi);
  const auto& k = target_->intrinsics;
  const Image& image = target_->intensity;
  const Eigen::Index w = image.cols();
  const Eigen::Index h = image.rows();
  const double max_u = double(w - 1);
  const double max_v = double(h - 1);
  const double* data = image.data();

  double sum = 0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    const Eigen::Vector3d q = g.R * points_.col(i) + g.T;
    if (!(q.z() > 0))
      continue;
    const auto a = anchors_.col(i);
    const double u = a[0] + k.fx * (q.x() / q.z() - a[2]);
    const double v = a[1] + k.fy * (q.y() / q.z() - a[3]);
    if (!(u >= 0.0 && v >= 0.0 && u <= max_u && v <= max_v))
      continue;

    // Inlined sample_bilinear; the bounds test above is its validity rule.
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    const auto u0 = static_cast<Eigen::Index>(fu);
    const auto v0 = static_cast<Eigen::Index>(fv);
    const double au = u - fu;
    const double av = v - fv;
    const Eigen::Index du = u0 + 1 < w ? 1 : 0;
    const Eigen::Index dv = v0 + 1 < h ? w : 0;
    const double* p = data + v0 * w + u0;
    const double top = (1.0 - au) * p[0] + au * p[du];
    const double bottom = (1.0 - au) * p[dv] + au * p[dv + du];
    const double sampled = (1.0 - av) * top + av * bottom;

    const double r = sampled - intensities_[static_cast<std::size_t>(i)];
    sum += r * r;
    ++count;
  }

  ResidualStats stats;
  stats.valid_count = count;
  stats.mean_squared_error = count > 0 ? sum / double(count) : 0.0;
  return stats;
}

ResidualStats PhotometricObjective::operator()(const Twistd& xi) const
{
  ResidualStats stats = residuals(xi);
  if (degenerate(stats))
    throw DegenerateOverlap("only " + std::to_string(stats.valid_count) +
                            " pixels overlap, need " + std::to_string(min_valid_count_));
  return stats;
}

ResidualStats photometric_error(const Twistd& xi, const RgbdFrame& reference,
                                const RgbdFrame& target)
{
  return PhotometricObjective(reference, target)(xi);
}

}  // namespace gavo

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gavo/image.hpp"
#include "gavo/se3.hpp"

namespace gavo {

struct ResidualStats
{
  double mean_squared_error = 0;
  std::size_t valid_count = 0;
};

/// Fraction of the reference image that must produce residuals before an
/// error value is considered meaningful.
inline constexpr double kMinValidFraction = 0.01;

/// Mean squared intensity residual between a reference frame and a target
/// frame under a candidate motion.
///
/// Every reference pixel with positive depth is back-projected with that
/// depth, moved by exp(xi), projected into the target camera and compared
/// with the bilinearly sampled target intensity. Pixels landing behind the
/// camera or outside the target image are dropped and the mean is taken
/// over the pixels that remain.
///
/// The back-projected reference points are computed once on construction,
/// so one objective can score many candidate twists. Evaluation is const
/// and may run concurrently from several threads.
class PhotometricObjective
{
public:
  /// Throws DimensionMismatch when the frames differ in size or intrinsics.
  PhotometricObjective(const RgbdFrame& reference, const RgbdFrame& target);

  /// Residual statistics without the overlap check.
  ResidualStats residuals(const Twistd& xi) const;

  /// As residuals(), but throws DegenerateOverlap below the 1% floor.
  ResidualStats operator()(const Twistd& xi) const;

  bool degenerate(const ResidualStats& stats) const
  {
    return stats.valid_count < min_valid_count_;
  }

  std::size_t valid_depth_count() const { return intensities_.size(); }
  std::size_t min_valid_count() const { return min_valid_count_; }

private:
  Eigen::Matrix3Xd points_;
  // Source pixel (u, v) and the normalised projection (x/z, y/z) of its point.
  // The warped pixel is formed as a displacement from the source pixel, so
  // the zero twist maps every pixel exactly onto itself.
  Eigen::Matrix4Xd anchors_;
  std::vector<double> intensities_;
  const RgbdFrame* target_;
  std::size_t min_valid_count_;
};

/// One-shot evaluation; see PhotometricObjective.
ResidualStats photometric_error(const Twistd& xi, const RgbdFrame& reference,
                                const RgbdFrame& target);

}  // namespace gavo

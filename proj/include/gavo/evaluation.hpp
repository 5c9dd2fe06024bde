#pragma once

#include <utility>
#include <vector>

#include "gavo/dataset.hpp"
#include "gavo/se3.hpp"

namespace gavo {

struct StampedPose
{
  double timestamp = 0;
  RigidTransformd pose;
};

/// Absolute camera-to-world poses with strictly increasing timestamps.
using Trajectory = std::vector<StampedPose>;

struct StampedTwist
{
  double timestamp = 0;
  Twistd xi;
};

/// Chains frame-to-frame motions: pose_0 = identity at start_timestamp and
/// pose_{k+1} = pose_k * exp(xi_k), stamped with motion k's timestamp.
/// An empty motion list yields an empty trajectory. Throws
/// NonMonotonicTimestamps.
Trajectory accumulate(double start_timestamp, const std::vector<StampedTwist>& motions);

Trajectory to_trajectory(const std::vector<GroundTruthPose>& poses);

struct MatchedTrajectories
{
  Trajectory estimate;
  Trajectory groundtruth;
};

/// Pairs every estimated pose with the nearest ground-truth pose within
/// max_dt; unmatched estimates are dropped. Throws EmptyOverlap.
MatchedTrajectories match_to_groundtruth(const Trajectory& estimate,
                                         const std::vector<GroundTruthPose>& groundtruth,
                                         double max_dt = kDefaultMaxTimeDifference);

/// E_i = (Q_i^-1 Q_{i+delta})^-1 (P_i^-1 P_{i+delta}) for index-aligned
/// estimate P and ground truth Q. Throws InsufficientLength unless
/// size > delta >= 1.
std::vector<RigidTransformd> relative_pose_error(const Trajectory& estimate,
                                                 const Trajectory& groundtruth, int delta);

/// Root mean square of the translation norms. Throws EmptyInput.
double rmse_translational(const std::vector<RigidTransformd>& errors);

/// Root mean square of the rotation angles (radians). Throws EmptyInput.
double rmse_rotational(const std::vector<RigidTransformd>& errors);

struct DriftSample
{
  double timestamp = 0;
  double meters = 0;
};

/// Translation norm of each relative pose error, stamped with the end of
/// its interval (frame i + delta).
std::vector<DriftSample> per_frame_drift_series(const Trajectory& estimate,
                                                const Trajectory& groundtruth, int delta);

/// Accumulated position error against the first frame:
/// |trans((Q_0^-1 Q_i)^-1 (P_0^-1 P_i))| for every i.
std::vector<DriftSample> cumulative_drift_series(const Trajectory& estimate,
                                                 const Trajectory& groundtruth);

}  // namespace gavo

#include "gavo/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "gavo/errors.hpp"

namespace gavo {

Trajectory accumulate(double start_timestamp, const std::vector<StampedTwist>& motions)
{
  Trajectory trajectory;
  if (motions.empty())
    return trajectory;

  trajectory.reserve(motions.size() + 1);
  trajectory.push_back({start_timestamp, RigidTransformd::Identity()});
  for (const auto& m : motions) {
    if (!(m.timestamp > trajectory.back().timestamp))
      throw NonMonotonicTimestamps("motion at t=" + std::to_string(m.timestamp) +
                                   " does not follow t=" +
                                   std::to_string(trajectory.back().timestamp));
    trajectory.push_back({m.timestamp, compose(trajectory.back().pose, exp_twist(m.xi))});
  }
  return trajectory;
}

Trajectory to_trajectory(const std::vector<GroundTruthPose>& poses)
{
  Trajectory out;
  out.reserve(poses.size());
  for (const auto& p : poses)
    out.push_back({p.timestamp, from_quaternion(p.rotation_xyzw, p.translation)});
  return out;
}

MatchedTrajectories match_to_groundtruth(const Trajectory& estimate,
                                         const std::vector<GroundTruthPose>& groundtruth,
                                         double max_dt)
{
  MatchedTrajectories matched;
  for (const auto& est : estimate) {
    const auto it = std::lower_bound(
        groundtruth.begin(), groundtruth.end(), est.timestamp,
        [](const GroundTruthPose& g, double t) { return g.timestamp < t; });

    const GroundTruthPose* best = nullptr;
    double best_dt = max_dt;
    if (it != groundtruth.end() && std::abs(it->timestamp - est.timestamp) <= best_dt) {
      best = &*it;
      best_dt = std::abs(it->timestamp - est.timestamp);
    }
    if (it != groundtruth.begin()) {
      const auto prev = std::prev(it);
      if (std::abs(prev->timestamp - est.timestamp) < best_dt ||
          (!best && std::abs(prev->timestamp - est.timestamp) <= max_dt))
        best = &*prev;
    }
    if (!best)
      continue;
    matched.estimate.push_back(est);
    matched.groundtruth.push_back(
        {best->timestamp, from_quaternion(best->rotation_xyzw, best->translation)});
  }
  if (matched.estimate.empty())
    throw EmptyOverlap("no estimated pose lies within " + std::to_string(max_dt) +
                       " s of a ground-truth pose");
  return matched;
}

std::vector<RigidTransformd> relative_pose_error(const Trajectory& estimate,
                                                 const Trajectory& groundtruth, int delta)
{
  if (estimate.size() != groundtruth.size())
    throw InsufficientLength("estimate and ground truth are not index-aligned");
  if (delta < 1 || estimate.size() <= static_cast<std::size_t>(delta))
    throw InsufficientLength("need more than delta=" + std::to_string(delta) +
                             " poses, have " + std::to_string(estimate.size()));

  const auto step = static_cast<std::size_t>(delta);
  std::vector<RigidTransformd> errors;
  errors.reserve(estimate.size() - step);
  for (std::size_t i = 0; i + step < estimate.size(); ++i) {
    const RigidTransformd true_motion = relative(groundtruth[i].pose, groundtruth[i + step].pose);
    const RigidTransformd est_motion = relative(estimate[i].pose, estimate[i + step].pose);
    errors.push_back(relative(true_motion, est_motion));
  }
  return errors;
}

double rmse_translational(const std::vector<RigidTransformd>& errors)
{
  if (errors.empty())
    throw EmptyInput("rmse of an empty error list");
  double sum = 0;
  for (const auto& e : errors)
    sum += e.T.squaredNorm();
  return std::sqrt(sum / double(errors.size()));
}

double rmse_rotational(const std::vector<RigidTransformd>& errors)
{
  if (errors.empty())
    throw EmptyInput("rmse of an empty error list");
  double sum = 0;
  for (const auto& e : errors) {
    const double angle = rotation_angle(e);
    sum += angle * angle;
  }
  return std::sqrt(sum / double(errors.size()));
}

std::vector<DriftSample> per_frame_drift_series(const Trajectory& estimate,
                                                const Trajectory& groundtruth, int delta)
{
  const auto errors = relative_pose_error(estimate, groundtruth, delta);
  std::vector<DriftSample> series;
  series.reserve(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i)
    series.push_back({estimate[i + static_cast<std::size_t>(delta)].timestamp, errors[i].T.norm()});
  return series;
}

std::vector<DriftSample> cumulative_drift_series(const Trajectory& estimate,
                                                 const Trajectory& groundtruth)
{
  if (estimate.size() != groundtruth.size())
    throw InsufficientLength("estimate and ground truth are not index-aligned");
  std::vector<DriftSample> series;
  if (estimate.empty())
    return series;
  const RigidTransformd& p0 = estimate.front().pose;
  const RigidTransformd& q0 = groundtruth.front().pose;
  series.reserve(estimate.size());
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const RigidTransformd e =
        relative(relative(q0, groundtruth[i].pose), relative(p0, estimate[i].pose));
    series.push_back({estimate[i].timestamp, e.T.norm()});
  }
  return series;
}

}  // namespace gavo

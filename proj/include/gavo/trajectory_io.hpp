#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gavo/evaluation.hpp"

namespace gavo {

/// TUM trajectory text: "timestamp tx ty tz qx qy qz qw" per line, the
/// timestamp with 6 decimals and the pose with 10.
std::string format_tum_trajectory(const Trajectory& trajectory);

void write_tum_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);

/// Reads any TUM-format trajectory. Parse failures surface as
/// MalformedTrajectory; a missing file as MissingFile.
std::vector<GroundTruthPose> read_tum_poses(const std::filesystem::path& path);
Trajectory read_tum_trajectory(const std::filesystem::path& path);

/// "timestamp,<column>" CSV of a drift series.
std::string format_drift_csv(const std::vector<DriftSample>& series,
                             const std::string& column = "drift_m");

}  // namespace gavo

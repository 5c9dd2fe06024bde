#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "json.hpp"

#include "gavo/evaluation.hpp"
#include "gavo/genetic.hpp"
#include "gavo/run_config.hpp"

namespace gavo {

/// Output file names inside RunConfig::out.
inline constexpr const char* kTrajectoryFile = "trajectory.txt";
inline constexpr const char* kDriftFile = "drift.csv";
inline constexpr const char* kCumulativeDriftFile = "cumulative_drift.csv";
inline constexpr const char* kTraceFile = "ga_trace.csv";
inline constexpr const char* kSummaryFile = "summary.json";

struct OdometryResult
{
  Trajectory trajectory;
  std::vector<EstimationReport> reports;
  nlohmann::ordered_json summary;
};

/// Estimates the trajectory of a frame window of a TUM sequence, scores it
/// against the sequence ground truth and writes the trajectory, drift
/// series, GA traces and a JSON summary into config.out.
///
/// The relative pose error step is reduced to (matched frames - 1) when the
/// window is shorter than config.delta; the summary records the value used.
/// Progress lines go to `log` when given.
OdometryResult run_odometry(const RunConfig& config, std::ostream* log = nullptr);

/// Scores any TUM-format trajectory file against a ground-truth file.
/// Writes drift CSVs and summary.json into `out_dir` when given. Throws
/// MalformedTrajectory, EmptyOverlap or InsufficientLength.
nlohmann::ordered_json evaluate_only(const std::filesystem::path& estimate_path,
                                     const std::filesystem::path& groundtruth_path, int delta,
                                     double max_dt = kDefaultMaxTimeDifference,
                                     const std::optional<std::filesystem::path>& out_dir = {});

}  // namespace gavo

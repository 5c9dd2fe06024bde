#include "gavo/odometry.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "gavo/dataset.hpp"
#include "gavo/errors.hpp"
#include "gavo/pyramid.hpp"
#include "gavo/trajectory_io.hpp"

namespace gavo {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open for writing: " + path.string());
  out << text;
}

struct Scores
{
  double rmse_trans = 0;
  double rmse_rot = 0;
  int delta = 0;
  std::size_t matched = 0;
  std::vector<DriftSample> drift;
  std::vector<DriftSample> cumulative;
};

Scores score(const Trajectory& estimate, const std::vector<GroundTruthPose>& groundtruth,
             int delta, double max_dt)
{
  const MatchedTrajectories matched = match_to_groundtruth(estimate, groundtruth, max_dt);
  Scores s;
  s.delta = delta;
  s.matched = matched.estimate.size();
  const auto errors = relative_pose_error(matched.estimate, matched.groundtruth, delta);
  s.rmse_trans = rmse_translational(errors);
  s.rmse_rot = rmse_rotational(errors);
  s.drift = per_frame_drift_series(matched.estimate, matched.groundtruth, delta);
  s.cumulative = cumulative_drift_series(matched.estimate, matched.groundtruth);
  return s;
}

}  // namespace

OdometryResult run_odometry(const RunConfig& requested, std::ostream* log)
{
  RunConfig config = requested;
  if (config.deterministic)
    config.ga.threads = 1;
  config.validate();

  const auto wall_start = std::chrono::steady_clock::now();
  const std::filesystem::path dataset(config.dataset);
  if (!std::filesystem::is_directory(dataset))
    throw MissingFile(dataset.string());

  const auto records = load_sequence_index(dataset, config.max_dt);
  const auto groundtruth = load_groundtruth(dataset / "groundtruth.txt");
  const auto first = static_cast<std::size_t>(config.start);
  const auto count = static_cast<std::size_t>(config.frames);
  if (first + count > records.size())
    throw ConfigError("window [" + std::to_string(first) + ", " +
                      std::to_string(first + count) + ") exceeds the " +
                      std::to_string(records.size()) + " associated frames");

  const CameraIntrinsicsd intrinsics = config.intrinsics();
  const int levels = config.ga.pyramid_levels;

  OdometryResult result;
  std::vector<StampedTwist> motions;
  std::string trace_csv = "frame,level,iteration,best_error\n";
  Rng rng(config.ga.rng_seed);

  FramePyramid previous = build_pyramid(
      load_rgbd_frame(records[first], intrinsics, config.depth_scale), levels);
  for (std::size_t k = 1; k < count; ++k) {
    const FrameRecord& record = records[first + k];
    FramePyramid current =
        build_pyramid(load_rgbd_frame(record, intrinsics, config.depth_scale), levels);
    EstimationReport report =
        estimate_motion(previous, current, config.ga, Twistd::Zero(), rng);

    // The estimate maps points of frame k-1 into frame k; the camera itself
    // moves by the inverse, exp(-xi).
    motions.push_back({record.timestamp, -report.best_xi});

    char line[96];
    for (const auto& t : report.error_trace) {
      std::snprintf(line, sizeof(line), "%zu,%d,%d,%.12g\n", k, t.level, t.iteration,
                    t.best_error);
      trace_csv += line;
    }
    if (log) {
      *log << "frame " << k << "/" << count - 1 << "  best_error " << report.best_error
           << "  xi [" << report.best_xi.coeffs().transpose() << "]\n";
    }
    result.reports.push_back(std::move(report));
    previous = std::move(current);
  }

  result.trajectory = accumulate(records[first].timestamp, motions);

  const std::filesystem::path out(config.out);
  std::filesystem::create_directories(out);
  write_tum_trajectory(out / kTrajectoryFile, result.trajectory);
  write_text(out / kTraceFile, trace_csv);

  // Score the file as written so the summary matches a later evaluate_only.
  const Trajectory written = read_tum_trajectory(out / kTrajectoryFile);
  const std::size_t matched = match_to_groundtruth(written, groundtruth, config.max_dt).estimate.size();
  if (matched < 2)
    throw InsufficientLength("fewer than two frames have ground truth");
  const int delta = std::min(config.delta, static_cast<int>(matched) - 1);
  const Scores scores = score(written, groundtruth, delta, config.max_dt);
  write_text(out / kDriftFile, format_drift_csv(scores.drift));
  write_text(out / kCumulativeDriftFile, format_drift_csv(scores.cumulative, "error_m"));

  const double wall_seconds =
      config.deterministic
          ? 0.0
          : std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  nlohmann::ordered_json summary;
  summary["rmse_trans_m"] = scores.rmse_trans;
  summary["rmse_rot_rad"] = scores.rmse_rot;
  summary["frames"] = result.trajectory.size();
  summary["matched_frames"] = scores.matched;
  summary["delta"] = scores.delta;
  summary["seed"] = config.ga.rng_seed;
  summary["wall_seconds"] = wall_seconds;
  summary["config"] = to_json(config);
  write_text(out / kSummaryFile, summary.dump(2) + "\n");
  result.summary = std::move(summary);
  return result;
}

nlohmann::ordered_json evaluate_only(const std::filesystem::path& estimate_path,
                                     const std::filesystem::path& groundtruth_path, int delta,
                                     double max_dt,
                                     const std::optional<std::filesystem::path>& out_dir)
{
  const Trajectory estimate = read_tum_trajectory(estimate_path);
  const auto groundtruth = read_tum_poses(groundtruth_path);
  const Scores scores = score(estimate, groundtruth, delta, max_dt);

  nlohmann::ordered_json summary;
  summary["rmse_trans_m"] = scores.rmse_trans;
  summary["rmse_rot_rad"] = scores.rmse_rot;
  summary["frames"] = estimate.size();
  summary["matched_frames"] = scores.matched;
  summary["delta"] = scores.delta;
  summary["estimate"] = estimate_path.string();
  summary["groundtruth"] = groundtruth_path.string();

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_text(*out_dir / kDriftFile, format_drift_csv(scores.drift));
    write_text(*out_dir / kCumulativeDriftFile, format_drift_csv(scores.cumulative, "error_m"));
    write_text(*out_dir / kSummaryFile, summary.dump(2) + "\n");
  }
  return summary;
}

}  // namespace gavo

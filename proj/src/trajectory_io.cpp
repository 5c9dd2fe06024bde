#include "gavo/trajectory_io.hpp"

#include <cstdio>
#include <fstream>

#include "gavo/errors.hpp"

namespace gavo {

std::string format_tum_trajectory(const Trajectory& trajectory)
{
  std::string out;
  char line[256];
  for (const auto& p : trajectory) {
    const Eigen::Vector4d q = to_quaternion(p.pose.R);
    std::snprintf(line, sizeof(line), "%.6f %.10f %.10f %.10f %.10f %.10f %.10f %.10f\n",
                  p.timestamp, p.pose.T.x(), p.pose.T.y(), p.pose.T.z(), q[0], q[1], q[2],
                  q[3]);
    out += line;
  }
  return out;
}

void write_tum_trajectory(const std::filesystem::path& path, const Trajectory& trajectory)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open for writing: " + path.string());
  out << "# timestamp tx ty tz qx qy qz qw\n" << format_tum_trajectory(trajectory);
}

std::vector<GroundTruthPose> read_tum_poses(const std::filesystem::path& path)
{
  try {
    return load_groundtruth(path);
  } catch (const MalformedLine& e) {
    throw MalformedTrajectory(path.string() + ": " + e.what());
  } catch (const NonUnitQuaternion& e) {
    throw MalformedTrajectory(path.string() + ": " + e.what());
  }
}

Trajectory read_tum_trajectory(const std::filesystem::path& path)
{
  return to_trajectory(read_tum_poses(path));
}

std::string format_drift_csv(const std::vector<DriftSample>& series, const std::string& column)
{
  std::string out = "timestamp," + column + "\n";
  char line[96];
  for (const auto& s : series) {
    std::snprintf(line, sizeof(line), "%.6f,%.9f\n", s.timestamp, s.meters);
    out += line;
  }
  return out;
}

}  // namespace gavo

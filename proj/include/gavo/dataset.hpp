#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gavo/camera.hpp"
#include "gavo/image.hpp"

namespace gavo {

/// TUM convention: a 16-bit depth value of 5000 is one metre.
inline constexpr double kDefaultDepthScale = 5000.0;
/// Roughly half the 30 Hz frame period.
inline constexpr double kDefaultMaxTimeDifference = 0.02;

struct IndexEntry
{
  double timestamp = 0;
  std::string path;
};

struct FrameRecord
{
  double timestamp = 0;
  std::string rgb_path;
  std::string depth_path;
};

struct GroundTruthPose
{
  double timestamp = 0;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Vector4d rotation_xyzw{0, 0, 0, 1};
};

/// Named intrinsics presets for the Freiburg sensor families.
enum class IntrinsicsPreset { Freiburg1, Freiburg2 };

CameraIntrinsicsd preset_intrinsics(IntrinsicsPreset preset);

/// "fr1" / "fr2" (also the long "freiburg1" / "freiburg2" spellings).
IntrinsicsPreset parse_preset(const std::string& name);

/// Reads a TUM index file ("timestamp filename" per line, '#' comments).
/// Throws MissingFile or MalformedLine.
std::vector<IndexEntry> parse_index_file(const std::filesystem::path& path);

/// Inverse of parse_index_file, minus comments.
std::string format_index(const std::vector<IndexEntry>& entries);

/// Pairs RGB and depth entries by timestamp. Candidate pairs closer than
/// max_dt are taken greedily in order of increasing time difference, each
/// entry used at most once. Output is ordered by RGB timestamp and stamped
/// with it. Paths are passed through unchanged.
std::vector<FrameRecord> associate(const std::vector<IndexEntry>& rgb,
                                   const std::vector<IndexEntry>& depth,
                                   double max_dt = kDefaultMaxTimeDifference);

/// Decodes one frame: intensity = (R+G+B)/765, depth = raw/depth_scale
/// metres (0 stays 0). Throws MissingFile, DimensionMismatch or
/// UnsupportedPixelFormat.
RgbdFrame load_rgbd_frame(const FrameRecord& record, const CameraIntrinsicsd& intrinsics,
                          double depth_scale = kDefaultDepthScale);

/// Reads "timestamp tx ty tz qx qy qz qw" lines. Quaternions are
/// renormalized; a norm off by more than 0.01 throws NonUnitQuaternion.
/// The result is sorted by timestamp.
std::vector<GroundTruthPose> load_groundtruth(const std::filesystem::path& path);

/// The frames of a TUM sequence directory, RGB and depth associated and
/// paths resolved against the directory.
std::vector<FrameRecord> load_sequence_index(const std::filesystem::path& dataset_dir,
                                             double max_dt = kDefaultMaxTimeDifference);

}  // namespace gavo

#pragma once

// Test-only scene generators and oracles. Nothing here is used by the
// library itself.

#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "gavo/dataset.hpp"
#include "gavo/image.hpp"
#include "gavo/se3.hpp"

namespace gavo::testing {

/// exp(A) by its truncated power series, summed in long double.
Eigen::Matrix4d series_exp(const Eigen::Matrix4d& a, int terms = 30);

/// Smooth texture in [0.05, 0.95] over normalised image coordinates.
double plane_texture(double x, double y);

struct PlanePair
{
  RgbdFrame reference;
  RgbdFrame target;
};

/// Reference: fronto-parallel plane at `depth` carrying plane_texture.
/// Target: the same plane seen after the motion xi_star, rendered exactly by
/// intersecting each target ray with the plane (depth included).
PlanePair make_plane_pair(const Twistd& xi_star, int width, int height, double depth);
PlanePair make_plane_pair(const Twistd& xi_star, int width, int height, double depth,
                          const CameraIntrinsicsd& intrinsics);

/// Intrinsics of a 640x480 Kinect-like sensor scaled to `width`.
CameraIntrinsicsd scaled_intrinsics(int width);

/// Frame of constant intensity and depth.
RgbdFrame constant_frame(int width, int height, double intensity, double depth);

struct SequenceSpec
{
  int frames = 12;
  int width = 160;
  int height = 120;
  double start_time = 1305031102.175304;
  double frame_rate = 30.0;
  /// Scales the smooth camera path; 1 gives a few millimetres per frame.
  double motion_scale = 1.0;
};

/// Camera-to-world pose of the synthetic path at time t (seconds from start).
RigidTransformd synthetic_camera_pose(double t, double motion_scale);

/// Renders a textured box room along the synthetic path and writes a TUM
/// sequence directory: rgb/, depth/, rgb.txt, depth.txt, groundtruth.txt.
/// Depth timestamps lag RGB by 4 ms; ground truth is written at twice the
/// frame rate.
void write_synthetic_sequence(const std::filesystem::path& dir, const SequenceSpec& spec,
                              const CameraIntrinsicsd& intrinsics);

/// Frames rendered directly in memory along the same path.
std::vector<RgbdFrame> render_synthetic_frames(const SequenceSpec& spec,
                                               const CameraIntrinsicsd& intrinsics);

/// A fresh empty directory under the system temp path.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace gavo::testing

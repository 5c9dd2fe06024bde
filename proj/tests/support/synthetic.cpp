#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "gavo/png_io.hpp"

namespace gavo::testing {

Eigen::Matrix4d series_exp(const Eigen::Matrix4d& a, int terms)
{
  using Mat = Eigen::Matrix<long double, 4, 4>;
  const Mat al = a.cast<long double>();
  Mat sum = Mat::Identity();
  Mat term = Mat::Identity();
  for (int k = 1; k < terms; ++k) {
    term = term * al / static_cast<long double>(k);
    sum += term;
  }
  return sum.cast<double>();
}

double plane_texture(double x, double y)
{
  constexpr double tau = 2.0 * std::numbers::pi;
  return 0.5 + 0.18 * std::sin(tau * (0.8 * x + 0.5 * y) + 0.3) +
         0.12 * std::sin(tau * (-0.6 * x + 1.1 * y) + 1.1) +
         0.08 * std::sin(tau * (1.7 * x + 1.3 * y) + 2.0) +
         0.06 * std::sin(tau * (4.3 * x + 3.1 * y) + 0.7) +
         0.04 * std::sin(tau * (-7.0 * x + 9.0 * y) + 0.5);
}

CameraIntrinsicsd scaled_intrinsics(int width)
{
  const double s = width / 640.0;
  return {525.0 * s, 525.0 * s, (319.5 + 0.5) * s - 0.5, (239.5 + 0.5) * s - 0.5};
}

RgbdFrame constant_frame(int width, int height, double intensity, double depth)
{
  RgbdFrame f;
  f.intensity = Image::Constant(height, width, intensity);
  f.depth = Image::Constant(height, width, depth);
  f.intrinsics = scaled_intrinsics(width);
  return f;
}

PlanePair make_plane_pair(const Twistd& xi_star, int width, int height, double depth)
{
  return make_plane_pair(xi_star, width, height, depth, scaled_intrinsics(width));
}

PlanePair make_plane_pair(const Twistd& xi_star, int width, int height, double depth,
                          const CameraIntrinsicsd& k)
{
  PlanePair pair;
  pair.reference.intrinsics = k;
  pair.reference.intensity.resize(height, width);
  pair.reference.depth = Image::Constant(height, width, depth);
  for (int v = 0; v < height; ++v)
    for (int u = 0; u < width; ++u)
      pair.reference.intensity(v, u) = plane_texture(double(u) / width, double(v) / height);

  const RigidTransformd g = exp_twist(xi_star);
  const Eigen::Matrix3d rt = g.R.transpose();
  const Eigen::Vector3d rt_t = rt * g.T;

  pair.target.intrinsics = k;
  pair.target.intensity.resize(height, width);
  pair.target.depth.resize(height, width);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const Eigen::Vector3d ray((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
      const Eigen::Vector3d ray_ref = rt * ray;
      double intensity = 0.5;
      double z = 0.0;
      if (ray_ref.z() > 1e-9) {
        const double s = (depth + rt_t.z()) / ray_ref.z();
        if (s > 0) {
          const Eigen::Vector3d x = s * ray_ref - rt_t;  // reference-frame point, x.z() == depth
          const double ur = x.x() * k.fx / x.z() + k.cx;
          const double vr = x.y() * k.fy / x.z() + k.cy;
          intensity = plane_texture(ur / width, vr / height);
          z = s;
        }
      }
      pair.target.intensity(v, u) = intensity;
      pair.target.depth(v, u) = z;
    }
  }
  return pair;
}

RigidTransformd synthetic_camera_pose(double t, double motion_scale)
{
  const double m = motion_scale;
  const Eigen::Vector3d v(0.15 * std::sin(0.9 * t), 0.05 * std::sin(1.3 * t),
                          0.10 * std::sin(0.6 * t));
  const Eigen::Vector3d w(0.05 * std::sin(0.7 * t), 0.08 * std::sin(0.5 * t),
                          0.03 * std::sin(1.1 * t));
  RigidTransformd pose = exp_twist(Twistd(Eigen::Vector3d::Zero(), Eigen::Vector3d(m * w)));
  pose.T = m * v;
  return pose;
}

namespace {

struct Plane
{
  Eigen::Vector3d normal;
  double offset;  // normal . x = offset
  Eigen::Vector3d axis_a;
  Eigen::Vector3d axis_b;
};

// Box room around the start pose; the camera looks down +z, y points down.
const std::vector<Plane>& room()
{
  static const std::vector<Plane> planes = {
      {{0, 0, 1}, 2.5, {1, 0, 0}, {0, 1, 0}},    // back wall
      {{0, 1, 0}, 0.9, {1, 0, 0}, {0, 0, 1}},    // floor
      {{0, 1, 0}, -1.2, {1, 0, 0}, {0, 0, 1}},   // ceiling
      {{1, 0, 0}, -1.6, {0, 0, 1}, {0, 1, 0}},   // left wall
      {{1, 0, 0}, 1.6, {0, 0, 1}, {0, 1, 0}},    // right wall
      {{0, 0, 1}, -1.0, {1, 0, 0}, {0, 1, 0}},   // wall behind the camera
  };
  return planes;
}

struct RenderedPixel
{
  double intensity = 0;
  double chroma = 0;
  double depth = 0;
};

double room_texture(double x, double y)
{
  constexpr double tau = 2.0 * std::numbers::pi;
  return 0.5 + 0.16 * std::sin(tau * (1.7 * x + 0.9 * y) + 0.3) +
         0.12 * std::sin(tau * (-1.1 * x + 2.3 * y) + 1.1) +
         0.08 * std::sin(tau * (4.3 * x + 3.1 * y) + 2.0) +
         0.05 * std::sin(tau * (-7.0 * x + 9.0 * y) + 0.5);
}

RenderedPixel render_pixel(const RigidTransformd& c2w, const CameraIntrinsicsd& k, int u, int v)
{
  const Eigen::Vector3d ray_c((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
  const Eigen::Vector3d dir = c2w.R * ray_c;
  const Eigen::Vector3d& origin = c2w.T;

  double best_s = std::numeric_limits<double>::infinity();
  const Plane* hit = nullptr;
  for (const auto& p : room()) {
    const double denom = p.normal.dot(dir);
    if (std::abs(denom) < 1e-12)
      continue;
    const double s = (p.offset - p.normal.dot(origin)) / denom;
    if (s > 1e-6 && s < best_s) {
      best_s = s;
      hit = &p;
    }
  }
  RenderedPixel px;
  if (!hit)
    return px;
  const Eigen::Vector3d x = origin + best_s * dir;
  const double a = hit->axis_a.dot(x);
  const double b = hit->axis_b.dot(x);
  px.intensity = room_texture(a / 2.0, b / 2.0);
  px.chroma = std::sin(3.0 * a + 2.0 * b);
  px.depth = best_s;  // ray_c has unit z, so s is the camera-frame depth
  return px;
}

std::uint8_t to_byte(double value)
{
  return static_cast<std::uint8_t>(std::clamp(std::lround(value * 255.0), 0L, 255L));
}

}  // namespace

std::vector<RgbdFrame> render_synthetic_frames(const SequenceSpec& spec,
                                               const CameraIntrinsicsd& intrinsics)
{
  std::vector<RgbdFrame> frames;
  for (int f = 0; f < spec.frames; ++f) {
    const RigidTransformd pose = synthetic_camera_pose(f / spec.frame_rate, spec.motion_scale);
    RgbdFrame frame;
    frame.intrinsics = intrinsics;
    frame.intensity.resize(spec.height, spec.width);
    frame.depth.resize(spec.height, spec.width);
    for (int v = 0; v < spec.height; ++v) {
      for (int u = 0; u < spec.width; ++u) {
        const RenderedPixel px = render_pixel(pose, intrinsics, u, v);
        frame.intensity(v, u) = px.intensity;
        frame.depth(v, u) = px.depth;
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_synthetic_sequence(const std::filesystem::path& dir, const SequenceSpec& spec,
                              const CameraIntrinsicsd& intrinsics)
{
  std::filesystem::create_directories(dir / "rgb");
  std::filesystem::create_directories(dir / "depth");
  std::ofstream rgb_index(dir / "rgb.txt");
  std::ofstream depth_index(dir / "depth.txt");
  std::ofstream gt(dir / "groundtruth.txt");
  rgb_index << "# color images\n# timestamp filename\n";
  depth_index << "# depth maps\n# timestamp filename\n";
  gt << "# ground truth trajectory\n# timestamp tx ty tz qx qy qz qw\n";

  char name[64];
  char line[256];
  for (int f = 0; f < spec.frames; ++f) {
    const double t = f / spec.frame_rate;
    const RigidTransformd pose = synthetic_camera_pose(t, spec.motion_scale);

    Rgb8Image rgb{spec.width, spec.height, {}};
    Gray16Image depth{spec.width, spec.height, {}};
    rgb.data.resize(static_cast<std::size_t>(spec.width * spec.height * 3));
    depth.data.resize(static_cast<std::size_t>(spec.width * spec.height));
    for (int v = 0; v < spec.height; ++v) {
      for (int u = 0; u < spec.width; ++u) {
        const RenderedPixel px = render_pixel(pose, intrinsics, u, v);
        const std::size_t i = static_cast<std::size_t>(v * spec.width + u);
        const double c = 0.06 * px.chroma;
        rgb.data[3 * i] = to_byte(px.intensity + c);
        rgb.data[3 * i + 1] = to_byte(px.intensity);
        rgb.data[3 * i + 2] = to_byte(px.intensity - c);
        depth.data[i] = static_cast<std::uint16_t>(
            std::clamp(std::lround(px.depth * kDefaultDepthScale), 0L, 65535L));
      }
    }

    const double t_rgb = spec.start_time + t;
    const double t_depth = t_rgb + 0.004;
    std::snprintf(name, sizeof(name), "%.6f.png", t_rgb);
    write_png_rgb8((dir / "rgb" / name).string(), rgb);
    std::snprintf(line, sizeof(line), "%.6f rgb/%s\n", t_rgb, name);
    rgb_index << line;

    std::snprintf(name, sizeof(name), "%.6f.png", t_depth);
    write_png_gray16((dir / "depth" / name).string(), depth);
    std::snprintf(line, sizeof(line), "%.6f depth/%s\n", t_depth, name);
    depth_index << line;
  }

  // Ground truth at every frame time and halfway between frames.
  for (int h = -1; h <= 2 * spec.frames; ++h) {
    const double t = h / (2.0 * spec.frame_rate);
    const RigidTransformd pose = synthetic_camera_pose(t, spec.motion_scale);
    const Eigen::Vector4d q = to_quaternion(pose.R);
    std::snprintf(line, sizeof(line), "%.6f %.9f %.9f %.9f %.9f %.9f %.9f %.9f\n",
                  spec.start_time + t, pose.T.x(), pose.T.y(), pose.T.z(), q[0], q[1], q[2],
                  q[3]);
    gt << line;
  }
}

std::filesystem::path scratch_dir(const std::string& name)
{
  static std::mt19937_64 gen(std::random_device{}());
  const auto dir = std::filesystem::temp_directory_path() /
                   ("gavo_" + name + "_" + std::to_string(gen() % 1000000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace gavo::testing

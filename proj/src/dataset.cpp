#include "gavo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "gavo/errors.hpp"
#include "gavo/png_io.hpp"

namespace gavo {

namespace {

std::vector<std::string> split_ws(const std::string& line)
{
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;)
    tokens.push_back(std::move(tok));
  return tokens;
}

bool parse_double(const std::string& token, double& out)
{
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool is_skippable(const std::string& line)
{
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw MissingFile(path.string());
  return in;
}

}  // namespace

CameraIntrinsicsd preset_intrinsics(IntrinsicsPreset preset)
{
  switch (preset) {
    case IntrinsicsPreset::Freiburg1:
      return {517.3, 516.5, 318.6, 255.3};
    case IntrinsicsPreset::Freiburg2:
      return {520.9, 521.0, 325.1, 249.7};
  }
  throw ConfigError("unknown intrinsics preset");
}

IntrinsicsPreset parse_preset(const std::string& name)
{
  if (name == "fr1" || name == "freiburg1")
    return IntrinsicsPreset::Freiburg1;
  if (name == "fr2" || name == "freiburg2")
    return IntrinsicsPreset::Freiburg2;
  throw ConfigError("unknown intrinsics preset '" + name + "' (expected fr1 or fr2)");
}

std::vector<IndexEntry> parse_index_file(const std::filesystem::path& path)
{
  auto in = open_or_throw(path);
  std::vector<IndexEntry> entries;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (is_skippable(line))
      continue;
    const auto tokens = split_ws(line);
    IndexEntry entry;
    if (tokens.size() != 2 || !parse_double(tokens[0], entry.timestamp) ||
        entry.timestamp < 0)
      throw MalformedLine(line_no, "expected 'timestamp filename'");
    entry.path = tokens[1];
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string format_index(const std::vector<IndexEntry>& entries)
{
  std::ostringstream out;
  out.precision(17);
  for (const auto& e : entries)
    out << e.timestamp << ' ' << e.path << '\n';
  return out.str();
}

std::vector<FrameRecord> associate(const std::vector<IndexEntry>& rgb,
                                   const std::vector<IndexEntry>& depth, double max_dt)
{
  struct Candidate
  {
    double dt;
    std::size_t rgb;
    std::size_t depth;
  };

  // Both streams are sorted, so the depth window of each rgb entry only
  // moves forward.
  std::vector<Candidate> candidates;
  std::size_t window_start = 0;
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    const double t = rgb[i].timestamp;
    while (window_start < depth.size() && depth[window_start].timestamp < t - max_dt)
      ++window_start;
    for (std::size_t j = window_start; j < depth.size() && depth[j].timestamp <= t + max_dt; ++j) {
      const double dt = std::abs(depth[j].timestamp - t);
      if (dt <= max_dt)
        candidates.push_back({dt, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dt, a.rgb, a.depth) < std::tie(b.dt, b.rgb, b.depth);
  });

  std::vector<bool> rgb_used(rgb.size(), false);
  std::vector<bool> depth_used(depth.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& c : candidates) {
    if (rgb_used[c.rgb] || depth_used[c.depth])
      continue;
    rgb_used[c.rgb] = true;
    depth_used[c.depth] = true;
    pairs.emplace_back(c.rgb, c.depth);
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<FrameRecord> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs)
    out.push_back({rgb[i].timestamp, rgb[i].path, depth[j].path});
  return out;
}

RgbdFrame load_rgbd_frame(const FrameRecord& record, const CameraIntrinsicsd& intrinsics,
                          double depth_scale)
{
  if (!(depth_scale > 0))
    throw ConfigError("depth_scale must be positive");
  if (!intrinsics.valid())
    throw ConfigError("invalid camera intrinsics");

  const Rgb8Image rgb = read_png_rgb8(record.rgb_path);
  const Gray16Image raw = read_png_gray16(record.depth_path);
  if (rgb.width != raw.width || rgb.height != raw.height)
    throw DimensionMismatch("rgb " + std::to_string(rgb.width) + "x" +
                            std::to_string(rgb.height) + " vs depth " +
                            std::to_string(raw.width) + "x" + std::to_string(raw.height));

  RgbdFrame frame;
  frame.intrinsics = intrinsics;
  frame.intensity.resize(rgb.height, rgb.width);
  frame.depth.resize(rgb.height, rgb.width);
  for (int v = 0; v < rgb.height; ++v) {
    for (int u = 0; u < rgb.width; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * rgb.width + u;
      const int sum = rgb.data[3 * i] + rgb.data[3 * i + 1] + rgb.data[3 * i + 2];
      frame.intensity(v, u) = sum / 765.0;
      frame.depth(v, u) = raw.data[i] / depth_scale;
    }
  }
  return frame;
}

std::vector<GroundTruthPose> load_groundtruth(const std::filesystem::path& path)
{
  auto in = open_or_throw(path);
  std::vector<GroundTruthPose> poses;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (is_skippable(line))
      continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 8)
      throw MalformedLine(line_no, "expected 'timestamp tx ty tz qx qy qz qw'");
    double values[8];
    for (std::size_t k = 0; k < 8; ++k) {
      if (!parse_double(tokens[k], values[k]))
        throw MalformedLine(line_no, "unparseable number '" + tokens[k] + "'");
    }
    GroundTruthPose pose;
    pose.timestamp = values[0];
    pose.translation = {values[1], values[2], values[3]};
    pose.rotation_xyzw = {values[4], values[5], values[6], values[7]};
    const double norm = pose.rotation_xyzw.norm();
    if (std::abs(norm - 1.0) > 0.01)
      throw NonUnitQuaternion("line " + std::to_string(line_no) + ": |q| = " +
                              std::to_string(norm));
    pose.rotation_xyzw /= norm;
    poses.push_back(pose);
  }
  std::stable_sort(poses.begin(), poses.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  return poses;
}

std::vector<FrameRecord> load_sequence_index(const std::filesystem::path& dataset_dir,
                                             double max_dt)
{
  const auto rgb = parse_index_file(dataset_dir / "rgb.txt");
  const auto depth = parse_index_file(dataset_dir / "depth.txt");
  auto records = associate(rgb, depth, max_dt);
  for (auto& r : records) {
    r.rgb_path = (dataset_dir / r.rgb_path).string();
    r.depth_path = (dataset_dir / r.depth_path).string();
  }
  return records;
}

}  // namespace gavo

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gavo/camera.hpp"
#include "gavo/dataset.hpp"
#include "gavo/genetic.hpp"

namespace gavo {

/// Everything one odometry run needs. Every field is addressable by a flat
/// key (see config_keys()) both from a config file and from the command line.
struct RunConfig
{
  std::string dataset;
  int start = 0;
  int frames = 90;
  /// "fr1", "fr2" or "auto" (guess from the dataset directory name).
  std::string preset = "auto";
  std::optional<double> fx, fy, cx, cy;
  double depth_scale = kDefaultDepthScale;
  double max_dt = kDefaultMaxTimeDifference;
  /// Relative pose error step, in frames. 30 frames is one second at 30 Hz.
  int delta = 30;
  std::string out = "gavo_out";
  /// Single-threaded evaluation and no wall-clock value in the summary, so
  /// that repeated runs produce byte-identical files.
  bool deterministic = false;
  GaConfig ga;

  CameraIntrinsicsd intrinsics() const;

  /// Throws ConfigError.
  void validate() const;
};

/// All recognised keys, in documentation order.
const std::vector<std::string>& config_keys();

/// Assigns one key from its textual value. Throws ConfigError on an unknown
/// key or an unparseable value.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Parses "key = value" lines; '#' starts a comment. Throws MalformedLine.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies a config file on top of `config`. Throws MissingFile,
/// MalformedLine or ConfigError.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// The fully resolved configuration, intrinsics included.
nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace gavo

// gavo: genetic-algorithm dense RGB-D visual odometry.
//
//   gavo run --dataset <tum_sequence_dir> [--config file] [--<key> value ...]
//   gavo evaluate --est <trajectory.txt> --gt <groundtruth.txt> [--delta 30]

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gavo/errors.hpp"
#include "gavo/odometry.hpp"
#include "gavo/run_config.hpp"

namespace {

int run_command(const std::optional<std::string>& config_file,
                const std::map<std::string, std::string>& overrides, bool quiet)
{
  gavo::RunConfig config;
  if (config_file)
    gavo::apply_config_file(config, *config_file);
  for (const auto& [key, value] : overrides)
    gavo::set_config_value(config, key, value);

  const auto result = gavo::run_odometry(config, quiet ? nullptr : &std::cerr);
  std::cout << result.summary.dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Dense RGB-D visual odometry with a genetic algorithm"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Estimate a trajectory over a window of a TUM sequence");
  std::optional<std::string> config_file;
  bool quiet = false;
  run->add_option("--config", config_file, "Flat 'key = value' configuration file");
  run->add_flag("--quiet", quiet, "Suppress per-frame progress on stderr");

  std::map<std::string, std::string> raw_values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : gavo::config_keys()) {
    if (key == "deterministic") {
      options[key] = run->add_flag("--deterministic",
                                   "Single-threaded evaluation and no wall time in the summary");
      continue;
    }
    options[key] = run->add_option("--" + key, raw_values[key]);
  }

  auto* evaluate =
      app.add_subcommand("evaluate", "Relative pose error of any TUM trajectory file");
  std::string est_path, gt_path;
  std::optional<std::string> eval_out;
  int delta = 30;
  double max_dt = gavo::kDefaultMaxTimeDifference;
  evaluate->add_option("--est", est_path, "Estimated trajectory (TUM format)")->required();
  evaluate->add_option("--gt", gt_path, "Ground-truth trajectory (TUM format)")->required();
  evaluate->add_option("--delta", delta, "RPE step in frames")->capture_default_str();
  evaluate->add_option("--max_dt", max_dt, "Timestamp matching tolerance (s)")
      ->capture_default_str();
  evaluate->add_option("--out", eval_out, "Directory for drift CSVs and summary.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::map<std::string, std::string> overrides;
      for (const auto& [key, option] : options) {
        if (option->count() == 0)
          continue;
        overrides[key] = key == "deterministic" ? "true" : raw_values[key];
      }
      return run_command(config_file, overrides, quiet);
    }
    const auto summary = gavo::evaluate_only(
        est_path, gt_path, delta, max_dt,
        eval_out ? std::optional<std::filesystem::path>(*eval_out) : std::nullopt);
    std::cout << summary.dump(2) << std::endl;
    return 0;
  } catch (const gavo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return 2;
  } catch (const gavo::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

#include "gavo/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "gavo/errors.hpp"

namespace gavo {

namespace {

std::string trim(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text)
{
  const std::string value = trim(text);
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  if (first != last && *first == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || value.empty())
    throw ConfigError("invalid value '" + text + "' for " + key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out))
      throw ConfigError("non-finite value for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text)
{
  const std::string value = trim(text);
  if (value == "true" || value == "1" || value == "yes" || value == "on")
    return true;
  if (value == "false" || value == "0" || value == "no" || value == "off")
    return false;
  throw ConfigError("invalid boolean '" + text + "' for " + key);
}

Vector6d parse_vector6(const std::string& key, const std::string& text)
{
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',')
      c = ' ';
  std::istringstream in(normalized);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;)
    tokens.push_back(tok);
  Vector6d out;
  if (tokens.size() == 1) {
    out.setConstant(parse_number<double>(key, tokens[0]));
  } else if (tokens.size() == 6) {
    for (int i = 0; i < 6; ++i)
      out[i] = parse_number<double>(key, tokens[static_cast<std::size_t>(i)]);
  } else {
    throw ConfigError(key + " needs 1 or 6 comma-separated values");
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::vector<std::pair<std::string, Setter>>& setters()
{
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"dataset", [](RunConfig& c, auto&, auto& v) { c.dataset = trim(v); }},
      {"start", [](RunConfig& c, auto& k, auto& v) { c.start = parse_number<int>(k, v); }},
      {"frames", [](RunConfig& c, auto& k, auto& v) { c.frames = parse_number<int>(k, v); }},
      {"preset", [](RunConfig& c, auto&, auto& v) { c.preset = trim(v); }},
      {"fx", [](RunConfig& c, auto& k, auto& v) { c.fx = parse_number<double>(k, v); }},
      {"fy", [](RunConfig& c, auto& k, auto& v) { c.fy = parse_number<double>(k, v); }},
      {"cx", [](RunConfig& c, auto& k, auto& v) { c.cx = parse_number<double>(k, v); }},
      {"cy", [](RunConfig& c, auto& k, auto& v) { c.cy = parse_number<double>(k, v); }},
      {"depth_scale",
       [](RunConfig& c, auto& k, auto& v) { c.depth_scale = parse_number<double>(k, v); }},
      {"max_dt", [](RunConfig& c, auto& k, auto& v) { c.max_dt = parse_number<double>(k, v); }},
      {"delta", [](RunConfig& c, auto& k, auto& v) { c.delta = parse_number<int>(k, v); }},
      {"out", [](RunConfig& c, auto&, auto& v) { c.out = trim(v); }},
      {"deterministic",
       [](RunConfig& c, auto& k, auto& v) { c.deterministic = parse_bool(k, v); }},
      {"seed",
       [](RunConfig& c, auto& k, auto& v) { c.ga.rng_seed = parse_number<std::uint64_t>(k, v); }},
      {"rng_seed",
       [](RunConfig& c, auto& k, auto& v) { c.ga.rng_seed = parse_number<std::uint64_t>(k, v); }},
      {"population_size",
       [](RunConfig& c, auto& k, auto& v) { c.ga.population_size = parse_number<int>(k, v); }},
      {"max_iterations",
       [](RunConfig& c, auto& k, auto& v) { c.ga.max_iterations = parse_number<int>(k, v); }},
      {"lower_bounds",
       [](RunConfig& c, auto& k, auto& v) { c.ga.bounds.lower = parse_vector6(k, v); }},
      {"upper_bounds",
       [](RunConfig& c, auto& k, auto& v) { c.ga.bounds.upper = parse_vector6(k, v); }},
      {"mutation_fraction",
       [](RunConfig& c, auto& k, auto& v) { c.ga.mutation_fraction = parse_number<double>(k, v); }},
      {"mutation_rate",
       [](RunConfig& c, auto& k, auto& v) { c.ga.mutation_rate = parse_number<double>(k, v); }},
      {"crossover_fraction",
       [](RunConfig& c, auto& k, auto& v) { c.ga.crossover_fraction = parse_number<double>(k, v); }},
      {"stagnation_window",
       [](RunConfig& c, auto& k, auto& v) { c.ga.stagnation_window = parse_number<int>(k, v); }},
      {"stagnation_epsilon",
       [](RunConfig& c, auto& k, auto& v) { c.ga.stagnation_epsilon = parse_number<double>(k, v); }},
      {"pyramid_levels",
       [](RunConfig& c, auto& k, auto& v) { c.ga.pyramid_levels = parse_number<int>(k, v); }},
      {"mutation_order",
       [](RunConfig& c, auto&, auto& v) { c.ga.mutation_order = parse_mutation_order(trim(v)); }},
      {"threads", [](RunConfig& c, auto& k, auto& v) { c.ga.threads = parse_number<int>(k, v); }},
  };
  return table;
}

}  // namespace

CameraIntrinsicsd RunConfig::intrinsics() const
{
  std::string family = preset;
  if (family == "auto") {
    const std::string name = std::filesystem::path(dataset).filename().string() +
                             std::filesystem::path(dataset).parent_path().filename().string();
    family = (name.find("freiburg2") != std::string::npos ||
              name.find("fr2") != std::string::npos)
                 ? "fr2"
                 : "fr1";
  }
  CameraIntrinsicsd k = preset_intrinsics(parse_preset(family));
  if (fx)
    k.fx = *fx;
  if (fy)
    k.fy = *fy;
  if (cx)
    k.cx = *cx;
  if (cy)
    k.cy = *cy;
  return k;
}

void RunConfig::validate() const
{
  if (dataset.empty())
    throw ConfigError("dataset is required");
  if (start < 0)
    throw ConfigError("start must be non-negative");
  if (frames < 2)
    throw ConfigError("frames must be at least 2");
  if (!(depth_scale > 0))
    throw ConfigError("depth_scale must be positive");
  if (!(max_dt > 0))
    throw ConfigError("max_dt must be positive");
  if (delta < 1)
    throw ConfigError("delta must be at least 1");
  if (out.empty())
    throw ConfigError("out must name a directory");
  if (!intrinsics().valid())
    throw ConfigError("camera intrinsics need positive focal lengths");
  ga.validate();
}

const std::vector<std::string>& config_keys()
{
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& entry : setters())
      k.push_back(entry.first);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value)
{
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

std::map<std::string, std::string> parse_config_text(const std::string& text)
{
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    if (trim(line).empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw MalformedLine(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw MalformedLine(line_no, "empty key");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw MissingFile(path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  for (const auto& [key, value] : parse_config_text(buffer.str()))
    set_config_value(config, key, value);
}

nlohmann::ordered_json to_json(const RunConfig& config)
{
  const CameraIntrinsicsd k = config.intrinsics();
  const auto& ga = config.ga;
  auto vec = [](const Vector6d& v) { return std::vector<double>(v.data(), v.data() + 6); };
  nlohmann::ordered_json j;
  j["dataset"] = config.dataset;
  j["start"] = config.start;
  j["frames"] = config.frames;
  j["preset"] = config.preset;
  j["fx"] = k.fx;
  j["fy"] = k.fy;
  j["cx"] = k.cx;
  j["cy"] = k.cy;
  j["depth_scale"] = config.depth_scale;
  j["max_dt"] = config.max_dt;
  j["delta"] = config.delta;
  j["out"] = config.out;
  j["deterministic"] = config.deterministic;
  j["seed"] = ga.rng_seed;
  j["population_size"] = ga.population_size;
  j["max_iterations"] = ga.max_iterations;
  j["lower_bounds"] = vec(ga.bounds.lower);
  j["upper_bounds"] = vec(ga.bounds.upper);
  j["mutation_fraction"] = ga.mutation_fraction;
  j["mutation_rate"] = ga.mutation_rate;
  j["crossover_fraction"] = ga.crossover_fraction;
  j["stagnation_window"] = ga.stagnation_window;
  j["stagnation_epsilon"] = ga.stagnation_epsilon;
  j["pyramid_levels"] = ga.pyramid_levels;
  j["mutation_order"] = to_string(ga.mutation_order);
  j["threads"] = ga.threads;
  return j;
}

}  // namespace gavo

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gavo/pyramid.hpp"
#include "gavo/se3.hpp"

namespace gavo {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// A chromosome (the twist, one gene per coefficient) and its cached
/// photometric error. Unevaluated particles carry +inf.
struct Particle
{
  Twistd xi;
  double error = std::numeric_limits<double>::infinity();
};

using Population = std::vector<Particle>;

/// Axis-aligned box in twist space.
struct TwistBounds
{
  Vector6d lower = Vector6d::Zero();
  Vector6d upper = Vector6d::Zero();

  bool valid() const { return (lower.array() <= upper.array()).all(); }
  bool contains(const Twistd& xi) const
  {
    return (xi.coeffs().array() >= lower.array()).all() &&
           (xi.coeffs().array() <= upper.array()).all();
  }
  Twistd clamp(const Twistd& xi) const
  {
    return Twistd(Vector6d(xi.coeffs().cwiseMax(lower).cwiseMin(upper)));
  }
  /// Offsets shifted to sit around a centre twist.
  TwistBounds around(const Twistd& center) const
  {
    return {center.coeffs() + lower, center.coeffs() + upper};
  }
  TwistBounds scaled(double factor) const { return {lower * factor, upper * factor}; }
};

/// When mutants are drawn within one generation.
enum class MutationOrder {
  /// Crossover offspring are merged first; mutants are drawn from the
  /// surviving pool and merged in a second elitist step.
  AfterCrossoverMerge,
  /// Mutants are drawn from the generation's parents and merged together
  /// with the crossover offspring.
  WithCrossover,
};

std::string to_string(MutationOrder order);
MutationOrder parse_mutation_order(const std::string& name);

struct GaConfig
{
  int population_size = 200;
  /// Per pyramid level.
  int max_iterations = 60;
  /// Search box offsets at the coarsest level, relative to the running
  /// estimate. Each finer level halves them.
  TwistBounds bounds{Vector6d::Constant(-0.15), Vector6d::Constant(0.15)};
  double mutation_fraction = 0.30;
  /// Mutation step as a fraction of each gene's search width.
  double mutation_rate = 0.1;
  double crossover_fraction = 0.7;
  int stagnation_window = 10;
  double stagnation_epsilon = 1e-7;
  int pyramid_levels = 4;
  std::uint64_t rng_seed = 42;
  MutationOrder mutation_order = MutationOrder::AfterCrossoverMerge;
  /// Threads used to score particles; 0 picks the OpenMP default. The
  /// result does not depend on this value.
  int threads = 1;

  /// Throws ConfigError.
  void validate() const;
};

/// The single source of randomness for one optimisation run. Draws are
/// consumed in a fixed order, so a seed reproduces a run exactly.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  double normal() { return normal_(engine_); }
  std::size_t index(std::size_t n)
  {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// N particles, the first exactly `center`, the rest uniform in `active`.
Population init_population(std::size_t size, const TwistBounds& active, const Twistd& center,
                           Rng& rng);

/// Same, with the active box taken as cfg.bounds around `center`.
Population init_population(const GaConfig& cfg, const Twistd& center, Rng& rng);

/// Floor applied to errors before they enter the fitness ratio.
inline constexpr double kMinErrorFloor = 1e-12;

/// f_i = exp(-8 E_i / E_min). Errors below 1e-12 count as 1e-12, so the
/// best particle always scores exp(-8).
std::vector<double> fitness(std::span<const double> errors);

struct SelectionWheel
{
  std::vector<double> probabilities;
  std::vector<double> cumulative;
};

/// Normalised fitness and its running sum. The last cumulative entry is
/// exactly 1. Throws ZeroFitnessSum.
SelectionWheel selection_probabilities(std::span<const double> fitness);

/// First index whose cumulative value exceeds `draw` (in [0, 1)).
std::size_t roulette_select(std::span<const double> cumulative, double draw);
std::size_t roulette_select(std::span<const double> cumulative, Rng& rng);

/// Intermediate crossover with explicit per-gene weights:
/// o1 = a p1 + (1-a) p2, o2 = a p2 + (1-a) p1, then clamped.
std::pair<Twistd, Twistd> crossover(const Twistd& p1, const Twistd& p2, const Vector6d& alpha,
                                    const TwistBounds& active);

/// Intermediate crossover with weights drawn uniformly in [0, 1] per gene.
std::pair<Twistd, Twistd> crossover(const Twistd& p1, const Twistd& p2,
                                    const TwistBounds& active, Rng& rng);

/// Gaussian mutation: gene i moves by rate * (upper_i - lower_i) * N(0, 1),
/// then the result is clamped to `active`.
Twistd mutate(const Twistd& xi, const TwistBounds& active, double mutation_rate, Rng& rng);

/// Elitist survivor selection: the N lowest-error particles of old and
/// offspring combined. Ties favour old members, then insertion order.
Population replace(const Population& old, const Population& offspring, std::size_t size);

/// Maps a twist to its error; +inf marks an unusable candidate. Must be safe
/// to call concurrently when GaConfig::threads != 1.
using ObjectiveFunction = std::function<double(const Twistd&)>;

struct TraceEntry
{
  int level = 0;
  /// 0 is the initial population; k is the state after generation k.
  int iteration = 0;
  double best_error = 0;
};

struct EstimationReport
{
  Twistd best_xi;
  double best_error = std::numeric_limits<double>::infinity();
  /// Generations run at each level, indexed by pyramid level (0 = finest).
  std::vector<int> iterations_used;
  /// Best error after every generation, coarsest level first.
  std::vector<TraceEntry> error_trace;
};

/// Called once for every particle scored, with the active level.
using EvaluationObserver = std::function<void(int level, const Particle&)>;

/// Runs the generational loop on one objective until the iteration cap or
/// the stagnation rule stops it. Returns the final population, sorted by
/// error, and appends to `report`.
Population evolve(const ObjectiveFunction& objective, const Twistd& center,
                  const TwistBounds& active, const GaConfig& cfg, Rng& rng, int level,
                  EstimationReport& report, const EvaluationObserver& observer = {});

/// Coarse-to-fine motion estimate between two pyramids. The twist maps
/// reference-camera points into the target camera. Throws
/// DegenerateOverlap if the zero motion already leaves under 1% overlap.
EstimationReport estimate_motion(const FramePyramid& reference, const FramePyramid& target,
                                 const GaConfig& cfg, const Twistd& init, Rng& rng,
                                 const EvaluationObserver& observer = {});

/// As above with a generator seeded from cfg.rng_seed.
EstimationReport estimate_motion(const FramePyramid& reference, const FramePyramid& target,
                                 const GaConfig& cfg, const Twistd& init = Twistd::Zero());

}  // namespace gavo

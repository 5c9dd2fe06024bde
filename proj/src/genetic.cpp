#include "gavo/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gavo/errors.hpp"
#include "gavo/photometric.hpp"

namespace gavo {

namespace {

constexpr double kFitnessPressure = 8.0;

std::size_t scaled_count(double fraction, int population)
{
  return static_cast<std::size_t>(std::lround(fraction * population));
}

void evaluate(Population& particles, const ObjectiveFunction& objective, int threads, int level,
              const EvaluationObserver& observer)
{
  const auto n = static_cast<std::ptrdiff_t>(particles.size());
#if defined(_OPENMP)
  if (threads == 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      particles[i].error = objective(particles[i].xi);
  } else if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      particles[i].error = objective(particles[i].xi);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      particles[i].error = objective(particles[i].xi);
  }
#else
  (void)threads;
  for (std::ptrdiff_t i = 0; i < n; ++i)
    particles[i].error = objective(particles[i].xi);
#endif
  for (auto& p : particles) {
    if (std::isnan(p.error))
      p.error = std::numeric_limits<double>::infinity();
    if (observer)
      observer(level, p);
  }
}

/// `count` distinct members of `pool`, chosen by a partial Fisher-Yates
/// shuffle.
std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t count, Rng& rng)
{
  std::vector<std::size_t> indices(pool);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  count = std::min(count, pool);
  for (std::size_t i = 0; i < count; ++i)
    std::swap(indices[i], indices[i + rng.index(pool - i)]);
  indices.resize(count);
  return indices;
}

}  // namespace

std::string to_string(MutationOrder order)
{
  switch (order) {
    case MutationOrder::AfterCrossoverMerge:
      return "after_crossover";
    case MutationOrder::WithCrossover:
      return "with_crossover";
  }
  return "unknown";
}

MutationOrder parse_mutation_order(const std::string& name)
{
  if (name == "after_crossover")
    return MutationOrder::AfterCrossoverMerge;
  if (name == "with_crossover")
    return MutationOrder::WithCrossover;
  throw ConfigError("unknown mutation_order '" + name +
                    "' (expected after_crossover or with_crossover)");
}

void GaConfig::validate() const
{
  if (population_size < 2)
    throw ConfigError("population_size must be at least 2");
  if (max_iterations < 0)
    throw ConfigError("max_iterations must be non-negative");
  if (!bounds.valid() || !bounds.lower.allFinite() || !bounds.upper.allFinite())
    throw ConfigError("lower_bounds must not exceed upper_bounds");
  if (!(mutation_rate >= 0 && mutation_rate <= 1))
    throw ConfigError("mutation_rate must lie in [0, 1]");
  if (!(mutation_fraction >= 0 && mutation_fraction <= 1))
    throw ConfigError("mutation_fraction must lie in [0, 1]");
  if (!(crossover_fraction >= 0 && crossover_fraction <= 1))
    throw ConfigError("crossover_fraction must lie in [0, 1]");
  if (stagnation_window < 1)
    throw ConfigError("stagnation_window must be at least 1");
  if (!(stagnation_epsilon >= 0))
    throw ConfigError("stagnation_epsilon must be non-negative");
  if (pyramid_levels < 1)
    throw ConfigError("pyramid_levels must be at least 1");
  if (threads < 0)
    throw ConfigError("threads must be non-negative");
}

Population init_population(std::size_t size, const TwistBounds& active, const Twistd& center,
                           Rng& rng)
{
  Population population(size);
  if (size == 0)
    return population;
  population[0].xi = center;
  for (std::size_t i = 1; i < size; ++i)
    for (int g = 0; g < 6; ++g)
      population[i].xi[g] = rng.uniform(active.lower[g], active.upper[g]);
  return population;
}

Population init_population(const GaConfig& cfg, const Twistd& center, Rng& rng)
{
  return init_population(static_cast<std::size_t>(cfg.population_size),
                         cfg.bounds.around(center), center, rng);
}

std::vector<double> fitness(std::span<const double> errors)
{
  double e_min = std::numeric_limits<double>::infinity();
  for (double e : errors)
    e_min = std::min(e_min, e);
  e_min = std::max(e_min, kMinErrorFloor);

  std::vector<double> f(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i)
    f[i] = std::exp(-kFitnessPressure * std::max(errors[i], kMinErrorFloor) / e_min);
  return f;
}

SelectionWheel selection_probabilities(std::span<const double> fitness)
{
  const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
  if (!(total > 0) || !std::isfinite(total))
    throw ZeroFitnessSum("fitness values sum to zero");

  SelectionWheel wheel;
  wheel.probabilities.reserve(fitness.size());
  for (double f : fitness)
    wheel.probabilities.push_back(f / total);
  wheel.cumulative.resize(fitness.size());
  std::partial_sum(wheel.probabilities.begin(), wheel.probabilities.end(),
                   wheel.cumulative.begin());
  wheel.cumulative.back() = 1.0;
  return wheel;
}

std::size_t roulette_select(std::span<const double> cumulative, double draw)
{
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw);
  if (it == cumulative.end())
    return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::size_t roulette_select(std::span<const double> cumulative, Rng& rng)
{
  return roulette_select(cumulative, rng.uniform());
}

std::pair<Twistd, Twistd> crossover(const Twistd& p1, const Twistd& p2, const Vector6d& alpha,
                                    const TwistBounds& active)
{
  const auto a = alpha.array();
  const Vector6d o1 = a * p1.coeffs().array() + (1.0 - a) * p2.coeffs().array();
  const Vector6d o2 = a * p2.coeffs().array() + (1.0 - a) * p1.coeffs().array();
  return {active.clamp(Twistd(o1)), active.clamp(Twistd(o2))};
}

std::pair<Twistd, Twistd> crossover(const Twistd& p1, const Twistd& p2,
                                    const TwistBounds& active, Rng& rng)
{
  Vector6d alpha;
  for (int g = 0; g < 6; ++g)
    alpha[g] = rng.uniform();
  return crossover(p1, p2, alpha, active);
}

Twistd mutate(const Twistd& xi, const TwistBounds& active, double mutation_rate, Rng& rng)
{
  Twistd out = xi;
  for (int g = 0; g < 6; ++g) {
    const double delta = mutation_rate * (active.upper[g] - active.lower[g]);
    out[g] += delta * rng.normal();
  }
  return active.clamp(out);
}

Population replace(const Population& old, const Population& offspring, std::size_t size)
{
  Population merged;
  merged.reserve(old.size() + offspring.size());
  merged.insert(merged.end(), old.begin(), old.end());
  merged.insert(merged.end(), offspring.begin(), offspring.end());
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Particle& a, const Particle& b) { return a.error < b.error; });
  if (merged.size() > size)
    merged.resize(size);
  return merged;
}

Population evolve(const ObjectiveFunction& objective, const Twistd& center,
                  const TwistBounds& active, const GaConfig& cfg, Rng& rng, int level,
                  EstimationReport& report, const EvaluationObserver& observer)
{
  const auto n = static_cast<std::size_t>(cfg.population_size);
  const std::size_t crossover_pairs = scaled_count(cfg.crossover_fraction, cfg.population_size) / 2;
  const std::size_t mutants = std::min(n, scaled_count(cfg.mutation_fraction, cfg.population_size));

  Population population = init_population(n, active, center, rng);
  evaluate(population, objective, cfg.threads, level, observer);
  population = replace({}, population, n);
  if (!std::isfinite(population.front().error))
    throw DegenerateOverlap("no particle of the initial population overlaps the target");

  std::vector<double> trace{population.front().error};
  report.error_trace.push_back({level, 0, trace.back()});

  auto draw_mutants = [&](const Population& source) {
    Population out;
    out.reserve(mutants);
    for (std::size_t idx : sample_without_replacement(source.size(), mutants, rng))
      out.push_back({mutate(source[idx].xi, active, cfg.mutation_rate, rng)});
    return out;
  };

  int generation = 0;
  while (generation < cfg.max_iterations) {
    ++generation;

    std::vector<double> errors(population.size());
    for (std::size_t i = 0; i < population.size(); ++i)
      errors[i] = population[i].error;
    const SelectionWheel wheel = selection_probabilities(fitness(errors));

    Population offspring;
    offspring.reserve(2 * crossover_pairs + mutants);
    for (std::size_t k = 0; k < crossover_pairs; ++k) {
      const std::size_t a = roulette_select(wheel.cumulative, rng);
      const std::size_t b = roulette_select(wheel.cumulative, rng);
      auto [o1, o2] = crossover(population[a].xi, population[b].xi, active, rng);
      offspring.push_back({o1});
      offspring.push_back({o2});
    }

    if (cfg.mutation_order == MutationOrder::WithCrossover) {
      Population mutated = draw_mutants(population);
      offspring.insert(offspring.end(), mutated.begin(), mutated.end());
      evaluate(offspring, objective, cfg.threads, level, observer);
      population = replace(population, offspring, n);
    } else {
      evaluate(offspring, objective, cfg.threads, level, observer);
      population = replace(population, offspring, n);
      Population mutated = draw_mutants(population);
      evaluate(mutated, objective, cfg.threads, level, observer);
      population = replace(population, mutated, n);
    }

    trace.push_back(population.front().error);
    report.error_trace.push_back({level, generation, trace.back()});

    const auto window = static_cast<std::size_t>(cfg.stagnation_window);
    if (trace.size() > window &&
        trace[trace.size() - 1 - window] - trace.back() < cfg.stagnation_epsilon)
      break;
  }

  if (static_cast<std::size_t>(level) >= report.iterations_used.size())
    report.iterations_used.resize(static_cast<std::size_t>(level) + 1, 0);
  report.iterations_used[static_cast<std::size_t>(level)] = generation;
  return population;
}

EstimationReport estimate_motion(const FramePyramid& reference, const FramePyramid& target,
                                 const GaConfig& cfg, const Twistd& init, Rng& rng,
                                 const EvaluationObserver& observer)
{
  cfg.validate();
  const int levels = cfg.pyramid_levels;
  if (reference.size() < static_cast<std::size_t>(levels) ||
      target.size() < static_cast<std::size_t>(levels))
    throw ConfigError("pyramids have fewer levels than pyramid_levels");

  EstimationReport report;
  report.iterations_used.assign(static_cast<std::size_t>(levels), 0);

  Twistd estimate = init;
  for (int level = levels - 1; level >= 0; --level) {
    const PhotometricObjective objective(reference[level], target[level]);
    if (objective.degenerate(objective.residuals(Twistd::Zero())))
      throw DegenerateOverlap("zero motion overlaps under 1% at pyramid level " +
                              std::to_string(level));

    const ObjectiveFunction score = [&objective](const Twistd& xi) {
      const ResidualStats stats = objective.residuals(xi);
      return objective.degenerate(stats) ? std::numeric_limits<double>::infinity()
                                         : stats.mean_squared_error;
    };
    const double scale = std::ldexp(1.0, -(levels - 1 - level));
    const TwistBounds active = cfg.bounds.scaled(scale).around(estimate);

    const Population population = evolve(score, estimate, active, cfg, rng, level, report, observer);
    estimate = population.front().xi;
    report.best_xi = estimate;
    report.best_error = population.front().error;

    // The caller's initial guess competes at full resolution even if the
    // coarse levels moved the search box away from it.
    if (level == 0) {
      const double init_error = score(init);
      if (init_error < report.best_error) {
        report.best_xi = init;
        report.best_error = init_error;
      }
    }
  }
  return report;
}

EstimationReport estimate_motion(const FramePyramid& reference, const FramePyramid& target,
                                 const GaConfig& cfg, const Twistd& init)
{
  Rng rng(cfg.rng_seed);
  return estimate_motion(reference, target, cfg, init, rng);
}

}  // namespace gavo

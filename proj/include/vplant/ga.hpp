#ifndef VPLANT_GA_HPP
#define VPLANT_GA_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vplant/growth.hpp"
#include "vplant/rng.hpp"
#include "vplant/traits.hpp"

namespace vplant::ga {

/// One optimized variable and its discretization. Continuous variables use a
/// uniform grid of `levels` points over [lower, upper]; integer-valued ones
/// enumerate the integers inside the interval instead.
struct ParamSpec {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  int levels = 2;
  bool integer_valued = false;

  double value_at(int level) const;
};

/// Grid over the breeding ranges of the twelve genetic parameters.
std::vector<ParamSpec> parameter_grid(const ParameterTable& table,
                                      int levels_per_continuous);

struct GaConfig {
  int population_size = 60;
  int generations = 100;
  double crossover_prob = 0.8;
  double mutation_prob = 0.05;
  int elitism = 1;
  std::uint64_t seed = 1;
  std::vector<ParamSpec> grid;
};

void validate(const GaConfig& config);

struct GaIndividual {
  std::vector<int> levels;
  double fitness = 0.0;
};

Eigen::VectorXd decode(const GaIndividual& individual, const std::vector<ParamSpec>& grid);
std::vector<int> encode(const Eigen::VectorXd& values, const std::vector<ParamSpec>& grid);

using FitnessFn = std::function<double(const Eigen::VectorXd&)>;

/// Fitness-proportional ("roulette wheel") selection of two parents.
/// Falls back to uniform draws when every fitness is zero.
std::pair<std::size_t, std::size_t> roulette_select(const std::vector<GaIndividual>& population,
                                                    Rng& rng);

/// With probability pc, swap the tails of the two parents behind a uniformly
/// chosen cut point; otherwise return copies.
std::pair<GaIndividual, GaIndividual> one_point_crossover(const GaIndividual& a,
                                                          const GaIndividual& b,
                                                          double pc, Rng& rng);

/// Independently resample each position among the other levels with
/// probability pm.
void mutate(GaIndividual& individual, double pm, const std::vector<ParamSpec>& grid,
            Rng& rng);

struct GenerationStat {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct GaResult {
  GaIndividual best;
  Eigen::VectorXd best_values;
  std::vector<GenerationStat> history;
};

/// Generational loop with elitism and per-run fitness memoization. The best
/// individual ever evaluated is returned; a fixed seed reproduces the run
/// exactly. `initial` (when given) replaces the random starting population.
GaResult evolve(const GaConfig& config, const FitnessFn& fitness,
                const std::vector<GaIndividual>* initial = nullptr);

struct IdeotypeRow {
  std::string name;
  double reference = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double optimal = 0.0;
  std::string boundary;  // "min", "max" or empty for an interior optimum
};

struct IdeotypeReport {
  std::vector<IdeotypeRow> rows;
  double reference_weight = 0.0;
  double optimized_weight = 0.0;
};

IdeotypeReport report(const GaResult& result, const GaConfig& config,
                      const ParameterTable& table, double reference_weight);

/// Production objective: decode the grid point into traits and return the
/// final cob weight of the simulated plant.
FitnessFn cob_weight_fitness(const growth::GrowthConstants& constants);

}  // namespace vplant::ga

#endif  // VPLANT_GA_HPP

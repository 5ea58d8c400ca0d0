#include "vplant/ga.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vplant::ga {

double ParamSpec::value_at(int level) const {
  if (level < 0 || level >= levels) throw std::out_of_range("grid index out of range");
  if (integer_valued) return std::ceil(lower - 1e-9) + level;
  if (levels == 1) return lower;
  return lower + level * (upper - lower) / (levels - 1);
}

std::vector<ParamSpec> parameter_grid(const ParameterTable& table,
                                      int levels_per_continuous) {
  if (levels_per_continuous < 2) throw std::invalid_argument("grid needs >= 2 levels");
  std::vector<ParamSpec> grid;
  grid.reserve(table.size());
  for (const auto& info : table) {
    ParamSpec spec;
    spec.name = info.name;
    spec.lower = info.lower();
    spec.upper = info.upper();
    spec.integer_valued = info.integer_valued;
    if (info.integer_valued) {
      const int first = static_cast<int>(std::ceil(spec.lower - 1e-9));
      const int last = static_cast<int>(std::floor(spec.upper + 1e-9));
      if (last < first) throw std::invalid_argument(info.name + ": empty integer range");
      spec.levels = last - first + 1;
    } else {
      spec.levels = levels_per_continuous;
    }
    grid.push_back(std::move(spec));
  }
  return grid;
}

void validate(const GaConfig& config) {
  if (config.population_size < 1) throw std::invalid_argument("population_size must be >= 1");
  if (config.generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0) {
    throw std::invalid_argument("crossover_prob must lie in [0,1]");
  }
  if (config.mutation_prob < 0.0 || config.mutation_prob > 1.0) {
    throw std::invalid_argument("mutation_prob must lie in [0,1]");
  }
  if (config.elitism < 0 || config.elitism > config.population_size) {
    throw std::invalid_argument("elitism must lie in [0, population_size]");
  }
  if (config.grid.empty()) throw std::invalid_argument("grid must not be empty");
  for (const auto& spec : config.grid) {
    if (spec.levels < 1) throw std::invalid_argument(spec.name + ": levels must be >= 1");
    if (!(spec.lower <= spec.upper)) {
      throw std::invalid_argument(spec.name + ": lower bound above upper bound");
    }
  }
}

Eigen::VectorXd decode(const GaIndividual& individual, const std::vector<ParamSpec>& grid) {
  if (individual.levels.size() != grid.size()) {
    throw std::invalid_argument("individual does not match the grid");
  }
  Eigen::VectorXd values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    values(j) = grid[j].value_at(individual.levels[j]);
  }
  return values;
}

std::vector<int> encode(const Eigen::VectorXd& values, const std::vector<ParamSpec>& grid) {
  if (values.size() != static_cast<Eigen::Index>(grid.size())) {
    throw std::invalid_argument("value vector does not match the grid");
  }
  std::vector<int> levels(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto& spec = grid[j];
    int level = 0;
    if (spec.integer_valued) {
      level = static_cast<int>(std::llround(values(j) - std::ceil(spec.lower - 1e-9)));
    } else if (spec.levels > 1) {
      const double step = (spec.upper - spec.lower) / (spec.levels - 1);
      level = static_cast<int>(std::llround((values(j) - spec.lower) / step));
    }
    if (level < 0 || level >= spec.levels) {
      throw std::out_of_range(spec.name + ": value is not a grid point");
    }
    levels[j] = level;
  }
  return levels;
}

std::pair<std::size_t, std::size_t> roulette_select(const std::vector<GaIndividual>& population,
                                                    Rng& rng) {
  if (population.empty()) throw std::invalid_argument("empty population");
  double total = 0.0;
  for (const auto& individual : population) total += std::max(0.0, individual.fitness);

  const auto draw = [&]() -> std::size_t {
    if (total <= 0.0) return rng.uniform_index(population.size());
    const double target = rng.uniform(0.0, total);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      cumulative += std::max(0.0, population[i].fitness);
      if (target < cumulative) return i;
    }
    return population.size() - 1;
  };
  const std::size_t first = draw();
  const std::size_t second = draw();
  return {first, second};
}

std::pair<GaIndividual, GaIndividual> one_point_crossover(const GaIndividual& a,
                                                          const GaIndividual& b,
                                                          double pc, Rng& rng) {
  if (a.levels.size() != b.levels.size()) {
    throw std::invalid_argument("crossover parents must have equal length");
  }
  GaIndividual child_a = a;
  GaIndividual child_b = b;
  const std::size_t length = a.levels.size();
  if (length >= 2 && rng.uniform() < pc) {
    const std::size_t cut = 1 + rng.uniform_index(length - 1);
    for (std::size_t j = cut; j < length; ++j) {
      std::swap(child_a.levels[j], child_b.levels[j]);
    }
  }
  return {std::move(child_a), std::move(child_b)};
}

void mutate(GaIndividual& individual, double pm, const std::vector<ParamSpec>& grid,
            Rng& rng) {
  if (individual.levels.size() != grid.size()) {
    throw std::invalid_argument("individual does not match the grid");
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j].levels < 2) continue;
    if (rng.uniform() < pm) {
      auto other = static_cast<int>(rng.uniform_index(grid[j].levels - 1));
      if (other >= individual.levels[j]) ++other;  // resample among the others
      individual.levels[j] = other;
    }
  }
}

GaResult evolve(const GaConfig& config, const FitnessFn& fitness,
                const std::vector<GaIndividual>* initial) {
  validate(config);
  Rng rng(config.seed);

  std::map<std::vector<int>, double> memo;  // simulate is pure, cache by genotype
  const auto evaluate = [&](GaIndividual& individual) {
    const auto found = memo.find(individual.levels);
    if (found != memo.end()) {
      individual.fitness = found->second;
      return;
    }
    individual.fitness = fitness(decode(individual, config.grid));
    memo.emplace(individual.levels, individual.fitness);
  };

  std::vector<GaIndividual> population;
  if (initial != nullptr) {
    if (static_cast<int>(initial->size()) != config.population_size) {
      throw std::invalid_argument("initial population size mismatch");
    }
    population = *initial;
  } else {
    population.resize(config.population_size);
    for (auto& individual : population) {
      individual.levels.resize(config.grid.size());
      for (std::size_t j = 0; j < config.grid.size(); ++j) {
        individual.levels[j] = static_cast<int>(rng.uniform_index(config.grid[j].levels));
      }
    }
  }
  for (auto& individual : population) evaluate(individual);

  GaResult result;
  const auto record = [&](int generation) {
    double best = population.front().fitness;
    double sum = 0.0;
    for (const auto& individual : population) {
      best = std::max(best, individual.fitness);
      sum += individual.fitness;
    }
    result.history.push_back({generation, best, sum / population.size()});
  };
  const auto track_best = [&]() {
    for (const auto& individual : population) {
      if (result.best.levels.empty() || individual.fitness > result.best.fitness) {
        result.best = individual;
      }
    }
  };
  track_best();
  record(0);

  std::vector<std::size_t> order(population.size());
  for (int generation = 1; generation <= config.generations; ++generation) {
    // Elites first, sorted by fitness (index breaks ties for determinism).
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
      if (population[lhs].fitness != population[rhs].fitness) {
        return population[lhs].fitness > population[rhs].fitness;
      }
      return lhs < rhs;
    });
    std::vector<GaIndividual> next;
    next.reserve(population.size());
    for (int e = 0; e < config.elitism; ++e) next.push_back(population[order[e]]);

    while (next.size() < population.size()) {
      const auto [first, second] = roulette_select(population, rng);
      auto [child_a, child_b] =
          one_point_crossover(population[first], population[second],
                              config.crossover_prob, rng);
      mutate(child_a, config.mutation_prob, config.grid, rng);
      mutate(child_b, config.mutation_prob, config.grid, rng);
      next.push_back(std::move(child_a));
      if (next.size() < population.size()) next.push_back(std::move(child_b));
    }
    population = std::move(next);
    for (auto& individual : population) evaluate(individual);
    track_best();
    record(generation);
  }

  result.best_values = decode(result.best, config.grid);
  return result;
}

IdeotypeReport report(const GaResult& result, const GaConfig& config,
                      const ParameterTable& table, double reference_weight) {
  if (config.grid.size() != table.size()) {
    throw std::invalid_argument("grid and parameter table must align");
  }
  IdeotypeReport out;
  out.reference_weight = reference_weight;
  out.optimized_weight = result.best.fitness;
  for (std::size_t j = 0; j < config.grid.size(); ++j) {
    const auto& spec = config.grid[j];
    IdeotypeRow row;
    row.name = spec.name;
    row.reference = table[j].reference;
    row.lower = spec.lower;
    row.upper = spec.upper;
    row.optimal = result.best_values(j);
    const int level = result.best.levels[j];
    if (spec.levels > 1 && level == 0) {
      row.boundary = "min";
    } else if (spec.levels > 1 && level == spec.levels - 1) {
      row.boundary = "max";
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

FitnessFn cob_weight_fitness(const growth::GrowthConstants& constants) {
  return [constants](const Eigen::VectorXd& values) {
    return growth::simulate(from_vector(values), constants).final_cob_weight();
  };
}

}  // namespace vplant::ga

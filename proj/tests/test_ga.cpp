#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "vplant/ga.hpp"

using namespace vplant;
using namespace vplant::ga;

namespace {

std::vector<ParamSpec> toy_grid(int params, int levels) {
  std::vector<ParamSpec> grid;
  for (int j = 0; j < params; ++j) {
    grid.push_back({"p" + std::to_string(j), 0.0, static_cast<double>(levels - 1),
                    levels, false});
  }
  return grid;
}

// Bumpy 4x4 table with a unique interior maximum at (2, 2).
double bumpy(const Eigen::VectorXd& v) {
  static const double table[4][4] = {
      {1, 2, 3, 2}, {2, 8, 4, 3}, {3, 4, 9, 1}, {2, 3, 1, 7}};
  return table[static_cast<int>(v(0))][static_cast<int>(v(1))];
}

}  // namespace

TEST_CASE("decode: grid endpoints and the odd-level midpoint") {
  const auto table = default_parameter_table();
  const auto grid = parameter_grid(table, 5);
  GaIndividual low, mid, high;
  for (const auto& spec : grid) {
    low.levels.push_back(0);
    mid.levels.push_back((spec.levels - 1) / 2);
    high.levels.push_back(spec.levels - 1);
  }
  const auto low_values = decode(low, grid);
  const auto mid_values = decode(mid, grid);
  const auto high_values = decode(high, grid);
  for (int j = 0; j < kTraitCount; ++j) {
    if (table[j].integer_valued) continue;
    CHECK(low_values(j) == doctest::Approx(table[j].lower()));
    CHECK(mid_values(j) == doctest::Approx(table[j].reference));
    CHECK(high_values(j) == doctest::Approx(table[j].upper()));
  }
}

TEST_CASE("decode: integer parameters enumerate the integers in range") {
  const auto grid = parameter_grid(default_parameter_table(), 16);
  const auto& ear = grid[kEarCycle];
  CHECK(ear.integer_valued);
  CHECK(ear.levels == 7);  // 15 +/- 20% covers 12..18
  for (int level = 0; level < ear.levels; ++level) {
    CHECK(ear.value_at(level) == doctest::Approx(12.0 + level));
  }
  const auto& shorts = grid[kShortInternodes];
  CHECK(shorts.levels == 3);  // 6 +/- 20% covers 5..7
  CHECK(shorts.value_at(0) == doctest::Approx(5.0));
  CHECK(shorts.value_at(2) == doctest::Approx(7.0));
}

TEST_CASE("decode/encode: bijection on random grid points") {
  const auto grid = parameter_grid(default_parameter_table(), 16);
  Rng rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    GaIndividual individual;
    for (const auto& spec : grid) {
      individual.levels.push_back(static_cast<int>(rng.uniform_index(spec.levels)));
    }
    CHECK(encode(decode(individual, grid), grid) == individual.levels);
  }
  GaIndividual bad;
  bad.levels.assign(grid.size(), 0);
  bad.levels[0] = grid[0].levels;
  CHECK_THROWS_AS(decode(bad, grid), std::out_of_range);
}

TEST_CASE("roulette: a single nonzero fitness always wins") {
  std::vector<GaIndividual> population(4);
  population[2].fitness = 5.0;
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = roulette_select(population, rng);
    CHECK(a == 2);
    CHECK(b == 2);
  }
}

TEST_CASE("roulette: draws are fitness proportional") {
  std::vector<GaIndividual> population(2);
  population[0].fitness = 1.0;
  population[1].fitness = 3.0;
  Rng rng(31);
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto [a, b] = roulette_select(population, rng);
    first += a == 0;
    first += b == 0;
  }
  CHECK(std::abs(first / (2.0 * draws) - 0.25) < 0.01);
}

TEST_CASE("roulette: zero fitness falls back to uniform draws") {
  std::vector<GaIndividual> population(4);
  Rng rng(55);
  std::vector<int> counts(4, 0);
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const auto [a, b] = roulette_select(population, rng);
    ++counts[a];
    ++counts[b];
  }
  for (int count : counts) {
    CHECK(std::abs(count / (2.0 * draws) - 0.25) < 0.01);
  }
}

TEST_CASE("crossover: pc = 0 copies the parents") {
  GaIndividual a{{0, 1, 2, 3}, 0.0};
  GaIndividual b{{3, 2, 1, 0}, 0.0};
  Rng rng(1);
  const auto [ca, cb] = one_point_crossover(a, b, 0.0, rng);
  CHECK(ca.levels == a.levels);
  CHECK(cb.levels == b.levels);
}

TEST_CASE("crossover: identical parents are unchanged by any cut") {
  GaIndividual a{{2, 2, 2, 2}, 0.0};
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto [ca, cb] = one_point_crossover(a, a, 1.0, rng);
    CHECK(ca.levels == a.levels);
    CHECK(cb.levels == a.levels);
  }
}

TEST_CASE("crossover: offspring are complementary tail swaps") {
  const GaIndividual a{{0, 0, 0, 0}, 0.0};
  const GaIndividual b{{3, 3, 3, 3}, 0.0};
  Rng rng(3);
  std::set<std::size_t> cuts_seen;
  for (int i = 0; i < 200; ++i) {
    const auto [ca, cb] = one_point_crossover(a, b, 1.0, rng);
    std::size_t cut = 0;
    while (cut < 4 && ca.levels[cut] == 0) ++cut;
    REQUIRE(cut >= 1);
    REQUIRE(cut <= 3);
    std::vector<int> expect_a(4, 0), expect_b(4, 3);
    for (std::size_t j = cut; j < 4; ++j) {
      expect_a[j] = 3;
      expect_b[j] = 0;
    }
    CHECK(ca.levels == expect_a);
    CHECK(cb.levels == expect_b);
    cuts_seen.insert(cut);
  }
  CHECK(cuts_seen == std::set<std::size_t>{1, 2, 3});  // cut = 2 gives (0,0,3,3)
}

TEST_CASE("mutate: pm = 0 never changes anything, pm = 1 with two levels flips all") {
  const auto grid = toy_grid(6, 2);
  GaIndividual individual{{0, 1, 0, 1, 0, 1}, 0.0};
  Rng rng(4);
  auto copy = individual;
  mutate(copy, 0.0, grid, rng);
  CHECK(copy.levels == individual.levels);
  mutate(copy, 1.0, grid, rng);
  CHECK(copy.levels == std::vector<int>{1, 0, 1, 0, 1, 0});
}

TEST_CASE("mutate: empirical rate matches pm") {
  const auto grid = toy_grid(10, 4);
  Rng rng(5);
  int changed = 0;
  const int rounds = 10000;  // 100000 positions in total
  for (int round = 0; round < rounds; ++round) {
    GaIndividual individual{std::vector<int>(10, 1), 0.0};
    mutate(individual, 0.1, grid, rng);
    for (int level : individual.levels) changed += level != 1;
  }
  CHECK(std::abs(changed / 100000.0 - 0.1) < 0.005);
}

TEST_CASE("evolve: no variation and a uniform start give a flat history") {
  GaConfig config;
  config.population_size = 10;
  config.generations = 15;
  config.crossover_prob = 0.0;
  config.mutation_prob = 0.0;
  config.elitism = 1;
  config.seed = 6;
  config.grid = toy_grid(2, 4);
  std::vector<GaIndividual> initial(10, GaIndividual{{1, 2}, 0.0});
  const auto result = evolve(config, bumpy, &initial);
  for (const auto& stat : result.history) {
    CHECK(stat.best == doctest::Approx(4.0));
    CHECK(stat.mean == doctest::Approx(4.0));
  }
}

TEST_CASE("evolve: finds the exhaustive maximum of the toy table") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GaConfig config;
    config.population_size = 20;
    config.generations = 50;
    config.mutation_prob = 0.2;  // two-gene chromosomes need real exploration
    config.seed = seed;
    config.grid = toy_grid(2, 4);
    const auto result = evolve(config, bumpy);
    CHECK(result.best.fitness == doctest::Approx(9.0));
    CHECK(result.best.levels == std::vector<int>{2, 2});
  }
}

TEST_CASE("evolve: zero generations reports the initial population") {
  GaConfig config;
  config.population_size = 8;
  config.generations = 0;
  config.seed = 12;
  config.grid = toy_grid(2, 4);
  const auto result = evolve(config, bumpy);
  REQUIRE(result.history.size() == 1);
  CHECK(result.history[0].generation == 0);
  CHECK(result.best.fitness == result.history[0].best);
}

TEST_CASE("evolve: best-so-far never decreases with elitism") {
  GaConfig config;
  config.population_size = 16;
  config.generations = 40;
  config.mutation_prob = 0.2;
  config.seed = 77;
  config.grid = toy_grid(3, 5);
  const auto fitness = [](const Eigen::VectorXd& v) {
    return std::sin(v(0)) + std::cos(v(1)) * v(2);
  };
  const auto result = evolve(config, fitness);
  double best = -1e300;
  for (const auto& stat : result.history) {
    best = std::max(best, stat.best);
    CHECK(stat.best == doctest::Approx(best));  // elite keeps the champion alive
  }
}

TEST_CASE("evolve: fixed seed reproduces the full history") {
  GaConfig config;
  config.population_size = 12;
  config.generations = 25;
  config.seed = 321;
  config.grid = toy_grid(3, 4);
  const auto fitness = [](const Eigen::VectorXd& v) { return v.sum(); };
  const auto a = evolve(config, fitness);
  const auto b = evolve(config, fitness);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].best == b.history[i].best);
    CHECK(a.history[i].mean == b.history[i].mean);
  }
  CHECK(a.best.levels == b.best.levels);
}

TEST_CASE("evolve: exhaustive equivalence on random small grids") {
  Rng rng(888);
  for (int trial = 0; trial < 3; ++trial) {
    const int params = 2 + static_cast<int>(rng.uniform_index(2));  // 2 or 3
    const int levels = params == 2 ? 16 : 6;                        // <= 256 points
    const auto grid = toy_grid(params, levels);
    std::vector<double> table(static_cast<std::size_t>(std::pow(levels, params)));
    for (auto& value : table) value = rng.uniform(0.0, 100.0);
    const auto fitness = [&](const Eigen::VectorXd& v) {
      std::size_t index = 0;
      for (int j = 0; j < params; ++j) index = index * levels + static_cast<int>(v(j));
      return table[index];
    };
    const double exhaustive = *std::max_element(table.begin(), table.end());
    GaConfig config;
    config.population_size = 60;
    config.generations = 250;
    config.mutation_prob = 0.15;
    config.seed = 1000 + trial;
    config.grid = grid;
    const auto result = evolve(config, fitness);
    CHECK(result.best.fitness == doctest::Approx(exhaustive));
  }
}

TEST_CASE("report: boundary flags and the weight summary") {
  GaConfig config;
  config.grid = parameter_grid(default_parameter_table(), 5);
  GaResult result;
  for (const auto& spec : config.grid) result.best.levels.push_back(0);
  result.best.levels[kEarCycle] = config.grid[kEarCycle].levels - 1;
  result.best.levels[kCobSink] = 2;
  result.best.fitness = 900.0;
  result.best_values = decode(result.best, config.grid);
  const auto table = default_parameter_table();
  const auto summary = report(result, config, table, 773.0);
  CHECK(summary.rows[kBladeThickness].boundary == "min");
  CHECK(summary.rows[kEarCycle].boundary == "max");
  CHECK(summary.rows[kCobSink].boundary.empty());
  CHECK(summary.reference_weight == 773.0);
  CHECK(summary.optimized_weight == 900.0);
}

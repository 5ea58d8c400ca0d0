#include "vplant/genetics.hpp"

#include <algorithm>
#include <stdexcept>

namespace vplant::genetics {

namespace {

void check_genome(const DiploidGenome& genome, const GeneticMap& map) {
  const auto n = static_cast<std::size_t>(map.markers());
  if (genome.c1.origin.size() != n || genome.c2.origin.size() != n) {
    throw std::invalid_argument("genome does not match the marker grid");
  }
}

bool is_homozygous(const DiploidGenome& genome) {
  return genome.c1.origin == genome.c2.origin;
}

}  // namespace

GeneticMap GeneticMap::regular(int locus_count, double marker_spacing_cm,
                               int markers_between) {
  if (locus_count < 1) throw std::invalid_argument("locus_count must be >= 1");
  if (marker_spacing_cm <= 0.0) throw std::invalid_argument("marker spacing must be > 0");
  if (markers_between < 0) throw std::invalid_argument("markers_between must be >= 0");
  GeneticMap map;
  const int step = markers_between + 1;
  const int marker_count = (locus_count - 1) * step + 1;
  map.marker_cm.resize(marker_count);
  for (int m = 0; m < marker_count; ++m) map.marker_cm[m] = m * marker_spacing_cm;
  map.locus_marker.resize(locus_count);
  for (int g = 0; g < locus_count; ++g) map.locus_marker[g] = g * step;
  return map;
}

ExpressionRules ExpressionRules::all_additive(int locus_count) {
  ExpressionRules rules;
  rules.mode.assign(locus_count, Expression::additive);
  rules.dominant_founder.assign(locus_count, 0);
  return rules;
}

Eigen::VectorXd GeneEffectMap::scaling_diagonal() const {
  Eigen::VectorXd d(traits());
  for (int j = 0; j < traits(); ++j) {
    const double row_sum = weights.row(j).sum();
    if (!(row_sum > 0.0)) {
      throw std::invalid_argument("gene effect row " + std::to_string(j + 1) +
                                  " has a nonpositive weight sum");
    }
    d(j) = reference(j) / row_sum;
  }
  return d;
}

double GeneEffectMap::founder_allele(int founder, int locus) const {
  if (founder != 0 && founder != 1) throw std::invalid_argument("founder must be 0 or 1");
  if (locus < 0 || locus >= loci()) throw std::out_of_range("locus out of range");
  return founder == 0 ? 1.0 - spread(locus) : 1.0 + spread(locus);
}

namespace {

/// Spread of each locus comes from the parameter that weights it most
/// (lowest row on ties); inert loci fall back to a 10% spread.
Eigen::VectorXd derive_spreads(const Eigen::MatrixXd& weights,
                               const ParameterTable& table) {
  Eigen::VectorXd spread(weights.cols());
  for (int g = 0; g < weights.cols(); ++g) {
    int best_row = -1;
    double best_weight = 0.0;
    for (int j = 0; j < weights.rows(); ++j) {
      if (weights(j, g) > best_weight) {
        best_weight = weights(j, g);
        best_row = j;
      }
    }
    spread(g) = best_row >= 0 ? table[best_row].half_range : 0.10;
  }
  return spread;
}

GeneEffectMap build_effects(const ParameterTable& table, Eigen::MatrixXd weights) {
  if (table.size() != kTraitCount || weights.rows() != kTraitCount) {
    throw std::invalid_argument("gene effect map needs one row per trait");
  }
  if ((weights.array() < 0.0).any()) {
    throw std::invalid_argument("gene effect weights must be nonnegative");
  }
  GeneEffectMap effects;
  effects.weights = std::move(weights);
  effects.reference.resize(kTraitCount);
  effects.integer_valued.resize(kTraitCount);
  for (int j = 0; j < kTraitCount; ++j) {
    effects.reference(j) = table[j].reference;
    effects.integer_valued[j] = table[j].integer_valued;
  }
  effects.spread = derive_spreads(effects.weights, table);
  effects.scaling_diagonal();  // reject zero rows up front
  return effects;
}

}  // namespace

GeneEffectMap diagonal_effects(const ParameterTable& table, int locus_count) {
  if (locus_count < kTraitCount) {
    throw std::invalid_argument("diagonal effects need at least one locus per trait");
  }
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(kTraitCount, locus_count);
  for (int j = 0; j < kTraitCount; ++j) weights(j, j) = 1.0;
  return build_effects(table, std::move(weights));
}

GeneEffectMap linked_effects(const ParameterTable& table, int locus_count) {
  if (locus_count < 15) {
    throw std::invalid_argument("linked effects preset needs 15 loci");
  }
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(kTraitCount, locus_count);
  const auto set = [&](int trait, std::initializer_list<std::pair<int, double>> genes) {
    for (const auto& [locus, w] : genes) weights(trait, locus - 1) = w;
  };
  set(kBladeThickness, {{3, 1.0}, {8, 1.0}});
  set(kBladeResistance, {{3, 3.0}, {8, 2.0}, {14, 1.0}});
  set(kSheathSink, {{1, 2.0}, {5, 1.0}});
  set(kInternodeSink, {{5, 1.0}, {10, 1.0}});
  set(kCobSink, {{2, 2.0}, {6, 1.0}});
  set(kBladeSinkVar, {{4, 1.0}});
  set(kSheathSinkVar, {{7, 1.0}, {12, 1.0}});
  set(kInternodeSinkVar, {{6, 1.0}, {9, 1.5}, {13, 1.5}});
  set(kCobSinkVar, {{11, 1.0}});
  set(kSeedBiomass, {{2, 1.0}, {15, 2.0}});
  set(kShortInternodes, {{1, 1.0}});
  set(kEarCycle, {{15, 1.0}});
  return build_effects(table, std::move(weights));
}

GeneEffectMap custom_effects(const ParameterTable& table, const Eigen::MatrixXd& weights) {
  return build_effects(table, weights);
}

DiploidGenome founder_genome(int founder, const GeneticMap& map) {
  if (founder != 0 && founder != 1) throw std::invalid_argument("founder must be 0 or 1");
  Chromosome homolog;
  homolog.origin.assign(map.markers(), static_cast<std::uint8_t>(founder));
  return DiploidGenome{homolog, homolog};
}

AlleleVector allele_values(const Chromosome& chromosome, const GeneticMap& map,
                           const GeneEffectMap& effects) {
  if (static_cast<int>(chromosome.origin.size()) != map.markers()) {
    throw std::invalid_argument("chromosome does not match the marker grid");
  }
  if (map.loci() != effects.loci()) {
    throw std::invalid_argument("map and gene effect map disagree on locus count");
  }
  AlleleVector values(map.loci());
  for (int g = 0; g < map.loci(); ++g) {
    const std::uint8_t origin = chromosome.origin[map.locus_marker[g]];
    if (origin > 1) throw std::invalid_argument("untracked allele origin");
    values(g) = effects.founder_allele(origin, g);
  }
  return values;
}

AlleleVector express(const DiploidGenome& genome, const ExpressionRules& rules,
                     const GeneticMap& map, const GeneEffectMap& effects) {
  check_genome(genome, map);
  if (static_cast<int>(rules.mode.size()) != map.loci()) {
    throw std::invalid_argument("expression rules must cover every locus");
  }
  const AlleleVector v1 = allele_values(genome.c1, map, effects);
  const AlleleVector v2 = allele_values(genome.c2, map, effects);
  AlleleVector c3(map.loci());
  for (int g = 0; g < map.loci(); ++g) {
    if (rules.mode[g] == Expression::additive) {
      c3(g) = 0.5 * (v1(g) + v2(g));
    } else {
      const std::uint8_t o1 = genome.c1.origin[map.locus_marker[g]];
      const std::uint8_t o2 = genome.c2.origin[map.locus_marker[g]];
      if (o1 == o2) {
        c3(g) = v1(g);  // homozygous: both homologs carry the same allele
      } else {
        c3(g) = effects.founder_allele(rules.dominant_founder[g], g);
      }
    }
  }
  return c3;
}

Eigen::VectorXd trait_vector(const AlleleVector& c3, const GeneEffectMap& effects) {
  if (c3.size() != effects.loci()) {
    throw std::invalid_argument("allele vector length does not match the gene count");
  }
  Eigen::VectorXd y = effects.scaling_diagonal().asDiagonal() * (effects.weights * c3);
  for (int j = 0; j < effects.traits(); ++j) {
    if (effects.integer_valued[j]) y(j) = std::round(y(j));
  }
  return y;
}

GeneticTraits genotype_to_traits(const AlleleVector& c3, const GeneEffectMap& effects) {
  return from_vector(trait_vector(c3, effects));
}

Chromosome gamete(const DiploidGenome& genome, const GeneticMap& map, Rng& rng) {
  check_genome(genome, map);
  const double length = map.length_cm();
  const int crossovers = length > 0.0 ? rng.poisson(length / 100.0) : 0;
  std::vector<double> cuts(crossovers);
  for (auto& cut : cuts) cut = rng.uniform(0.0, length);
  std::sort(cuts.begin(), cuts.end());
  int source = rng.coin() ? 1 : 0;

  Chromosome result;
  result.origin.resize(map.markers());
  std::size_t next_cut = 0;
  for (int m = 0; m < map.markers(); ++m) {
    while (next_cut < cuts.size() && cuts[next_cut] < map.marker_cm[m]) {
      source ^= 1;
      ++next_cut;
    }
    result.origin[m] = (source == 0 ? genome.c1 : genome.c2).origin[m];
  }
  return result;
}

DiploidGenome cross(const DiploidGenome& parent_a, const DiploidGenome& parent_b,
                    const GeneticMap& map, Rng& rng) {
  return DiploidGenome{gamete(parent_a, map, rng), gamete(parent_b, map, rng)};
}

std::string marker_codes(const DiploidGenome& genome, const GeneticMap& map) {
  check_genome(genome, map);
  std::string codes(map.markers(), '?');
  for (int m = 0; m < map.markers(); ++m) {
    const std::uint8_t o1 = genome.c1.origin[m];
    const std::uint8_t o2 = genome.c2.origin[m];
    if (o1 > 1 || o2 > 1) throw std::invalid_argument("untracked allele origin");
    codes[m] = o1 != o2 ? 'H' : (o1 == 0 ? '1' : '2');
  }
  return codes;
}

MappingPopulation make_ril(const DiploidGenome& parent1, const DiploidGenome& parent2,
                           int generations, int size, const GeneticContext& context,
                           std::uint64_t seed) {
  check_genome(parent1, context.map);
  check_genome(parent2, context.map);
  if (!is_homozygous(parent1) || !is_homozygous(parent2)) {
    throw std::invalid_argument("make_ril: parents must be fully homozygous");
  }
  if (generations < 2) {
    throw std::invalid_argument("make_ril: need at least the F1 and one selfing");
  }
  if (size < 0) throw std::invalid_argument("make_ril: size must be >= 0");

  Rng master(seed);
  MappingPopulation population;
  population.generations = generations;
  population.seed = seed;
  population.individuals.reserve(size);
  for (int lineage = 0; lineage < size; ++lineage) {
    Rng rng = master.spawn(static_cast<std::uint64_t>(lineage));
    DiploidGenome plant = cross(parent1, parent2, context.map, rng);
    for (int generation = 2; generation <= generations; ++generation) {
      plant = cross(plant, plant, context.map, rng);
    }
    Individual individual;
    individual.codes = marker_codes(plant, context.map);
    individual.trait_values = trait_vector(
        express(plant, context.rules, context.map, context.effects), context.effects);
    individual.traits = from_vector(individual.trait_values);
    individual.genome = std::move(plant);
    population.individuals.push_back(std::move(individual));
  }
  return population;
}

void simulate_phenotypes(MappingPopulation& population,
                         const growth::GrowthConstants& constants) {
  for (auto& individual : population.individuals) {
    individual.cob_weight =
        growth::simulate(individual.traits, constants).final_cob_weight();
  }
}

double mean_heterozygosity(const MappingPopulation& population, const GeneticMap& map) {
  if (population.individuals.empty() || map.loci() == 0) return 0.0;
  std::size_t heterozygous = 0;
  for (const auto& individual : population.individuals) {
    for (int g = 0; g < map.loci(); ++g) {
      const int m = map.locus_marker[g];
      heterozygous += individual.genome.c1.origin[m] != individual.genome.c2.origin[m];
    }
  }
  return static_cast<double>(heterozygous) /
         (static_cast<double>(population.individuals.size()) * map.loci());
}

void apply_noise(Eigen::VectorXd& values, double cv, Rng& rng) {
  if (cv < 0.0) throw std::invalid_argument("noise cv must be >= 0");
  if (cv == 0.0) return;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values(i) *= 1.0 + rng.normal(0.0, cv);
  }
}

}  // namespace vplant::genetics

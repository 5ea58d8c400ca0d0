#ifndef VPLANT_CONFIG_HPP
#define VPLANT_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "vplant/ga.hpp"
#include "vplant/genetics.hpp"
#include "vplant/growth.hpp"
#include "vplant/qtl.hpp"

namespace vplant::config {

struct MapSettings {
  double marker_spacing_cm = 10.0;
  int markers_between_qtl = 3;
  int locus_count = 15;

  bool operator==(const MapSettings&) const = default;
};

struct EffectsSettings {
  std::string preset = "diagonal";  // "diagonal", "fig4" or "custom"
  std::optional<Eigen::MatrixXd> rows;

  bool operator==(const EffectsSettings& other) const;
};

struct PopulationSettings {
  int size = 250;
  int generations = 6;
  std::optional<std::uint64_t> seed;

  bool operator==(const PopulationSettings&) const = default;
};

struct NoiseSettings {
  double cv = 0.0;
  std::optional<std::uint64_t> seed;

  bool operator==(const NoiseSettings&) const = default;
};

struct QtlSettings {
  double threshold = 3.0;
  double het_dose = 0.5;

  bool operator==(const QtlSettings&) const = default;
};

struct GaSettings {
  int population = 150;
  int generations = 3000;
  double crossover_prob = 0.8;
  double mutation_prob = 0.10;
  int levels = 16;
  int elitism = 1;
  std::optional<std::uint64_t> seed;

  bool operator==(const GaSettings&) const = default;
};

/// Complete description of one experiment. Every run is a pure function of
/// this document plus the master seed; block seeds are derived from the
/// master unless given explicitly.
struct ExperimentConfig {
  std::uint64_t seed = 20080101;
  std::string output_dir = "out";
  growth::GrowthConstants constants;
  ParameterTable parameters = default_parameter_table();
  MapSettings map;
  EffectsSettings effects;
  PopulationSettings population;
  NoiseSettings noise;
  QtlSettings qtl;
  GaSettings ga;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string serialize(const ExperimentConfig& config);
ExperimentConfig parse(const std::string& text);

ExperimentConfig load_file(const std::string& path);
void save_file(const std::string& path, const ExperimentConfig& config);

/// Throw std::invalid_argument naming the offending block and field.
void validate(const ExperimentConfig& config);

// Derived per-block seeds; all randomness flows from the master seed.
std::uint64_t population_seed(const ExperimentConfig& config);
std::uint64_t noise_seed(const ExperimentConfig& config);
std::uint64_t ga_seed(const ExperimentConfig& config);

genetics::GeneticMap make_map(const ExperimentConfig& config);
genetics::GeneEffectMap make_effects(const ExperimentConfig& config);
genetics::GeneticContext make_context(const ExperimentConfig& config);
qtl::ScanOptions scan_options(const ExperimentConfig& config);
ga::GaConfig ga_config(const ExperimentConfig& config);

}  // namespace vplant::config

#endif  // VPLANT_CONFIG_HPP

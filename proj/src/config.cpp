#include "vplant/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vplant/rng.hpp"

namespace vplant::config {

using nlohmann::json;

bool EffectsSettings::operator==(const EffectsSettings& other) const {
  if (preset != other.preset) return false;
  if (rows.has_value() != other.rows.has_value()) return false;
  if (!rows.has_value()) return true;
  return rows->rows() == other.rows->rows() && rows->cols() == other.rows->cols() &&
         (*rows == *other.rows);
}

namespace {

template <typename T>
void read(const json& block, const char* key, T& value) {
  if (block.contains(key)) value = block.at(key).get<T>();
}

template <typename T>
void read_optional(const json& block, const char* key, std::optional<T>& value) {
  if (block.contains(key)) value = block.at(key).get<T>();
}

json constants_to_json(const growth::GrowthConstants& c) {
  return json{{"potential_production", c.potential_production},
              {"ground_area", c.ground_area},
              {"light_extinction", c.light_extinction},
              {"blade_lifespan", c.blade_lifespan},
              {"cycle_count", c.cycle_count},
              {"phytomer_count", c.phytomer_count},
              {"tassel_cycle", c.tassel_cycle},
              {"tassel_sink", c.tassel_sink},
              {"tassel_sink_var", c.tassel_sink_var},
              {"blade_expansion", c.blade_expansion},
              {"sheath_expansion", c.sheath_expansion},
              {"internode_expansion", c.internode_expansion},
              {"tassel_expansion", c.tassel_expansion},
              {"cob_expansion", c.cob_expansion},
              {"short_internode_sink_factor", c.short_internode_sink_factor}};
}

void constants_from_json(const json& block, growth::GrowthConstants& c) {
  read(block, "potential_production", c.potential_production);
  read(block, "ground_area", c.ground_area);
  read(block, "light_extinction", c.light_extinction);
  read(block, "blade_lifespan", c.blade_lifespan);
  read(block, "cycle_count", c.cycle_count);
  read(block, "phytomer_count", c.phytomer_count);
  read(block, "tassel_cycle", c.tassel_cycle);
  read(block, "tassel_sink", c.tassel_sink);
  read(block, "tassel_sink_var", c.tassel_sink_var);
  read(block, "blade_expansion", c.blade_expansion);
  read(block, "sheath_expansion", c.sheath_expansion);
  read(block, "internode_expansion", c.internode_expansion);
  read(block, "tassel_expansion", c.tassel_expansion);
  read(block, "cob_expansion", c.cob_expansion);
  read(block, "short_internode_sink_factor", c.short_internode_sink_factor);
}

}  // namespace

std::string serialize(const ExperimentConfig& config) {
  json doc;
  doc["seed"] = config.seed;
  doc["output_dir"] = config.output_dir;
  doc["growth"] = constants_to_json(config.constants);

  json parameters = json::array();
  for (const auto& info : config.parameters) {
    parameters.push_back({{"name", info.name},
                          {"reference", info.reference},
                          {"half_range", info.half_range},
                          {"integer", info.integer_valued}});
  }
  doc["parameters"] = parameters;

  doc["map"] = {{"marker_spacing_cm", config.map.marker_spacing_cm},
                {"markers_between_qtl", config.map.markers_between_qtl},
                {"locus_count", config.map.locus_count}};

  doc["effects"] = {{"preset", config.effects.preset}};
  if (config.effects.rows) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < config.effects.rows->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < config.effects.rows->cols(); ++c) {
        row.push_back((*config.effects.rows)(r, c));
      }
      rows.push_back(std::move(row));
    }
    doc["effects"]["rows"] = std::move(rows);
  }

  doc["population"] = {{"size", config.population.size},
                       {"generations", config.population.generations}};
  if (config.population.seed) doc["population"]["seed"] = *config.population.seed;

  doc["noise"] = {{"cv", config.noise.cv}};
  if (config.noise.seed) doc["noise"]["seed"] = *config.noise.seed;

  doc["qtl"] = {{"threshold", config.qtl.threshold}, {"het_dose", config.qtl.het_dose}};

  doc["ga"] = {{"population", config.ga.population},
               {"generations", config.ga.generations},
               {"crossover_prob", config.ga.crossover_prob},
               {"mutation_prob", config.ga.mutation_prob},
               {"levels", config.ga.levels},
               {"elitism", config.ga.elitism}};
  if (config.ga.seed) doc["ga"]["seed"] = *config.ga.seed;

  return doc.dump(2) + "\n";
}

ExperimentConfig parse(const std::string& text) {
  const json doc = json::parse(text);
  ExperimentConfig config;
  read(doc, "seed", config.seed);
  read(doc, "output_dir", config.output_dir);
  if (doc.contains("growth")) constants_from_json(doc.at("growth"), config.constants);

  if (doc.contains("parameters")) {
    const auto& parameters = doc.at("parameters");
    if (!parameters.is_array() || parameters.size() != kTraitCount) {
      throw std::invalid_argument("parameters: expected an array of " +
                                  std::to_string(kTraitCount) + " entries");
    }
    ParameterTable table;
    for (const auto& entry : parameters) {
      TraitInfo info;
      info.name = entry.at("name").get<std::string>();
      read(entry, "reference", info.reference);
      read(entry, "half_range", info.half_range);
      read(entry, "integer", info.integer_valued);
      table.push_back(std::move(info));
    }
    config.parameters = std::move(table);
  }

  if (doc.contains("map")) {
    const auto& block = doc.at("map");
    read(block, "marker_spacing_cm", config.map.marker_spacing_cm);
    read(block, "markers_between_qtl", config.map.markers_between_qtl);
    read(block, "locus_count", config.map.locus_count);
  }

  if (doc.contains("effects")) {
    const auto& block = doc.at("effects");
    read(block, "preset", config.effects.preset);
    if (block.contains("rows")) {
      const auto& rows = block.at("rows");
      if (!rows.is_array() || rows.empty()) {
        throw std::invalid_argument("effects.rows: expected a nonempty array");
      }
      Eigen::MatrixXd weights(rows.size(), rows.at(0).size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows.at(r);
        if (row.size() != static_cast<std::size_t>(weights.cols())) {
          throw std::invalid_argument("effects.rows: ragged matrix");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
          weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              row.at(c).get<double>();
        }
      }
      config.effects.rows = std::move(weights);
    }
  }

  if (doc.contains("population")) {
    const auto& block = doc.at("population");
    read(block, "size", config.population.size);
    read(block, "generations", config.population.generations);
    read_optional(block, "seed", config.population.seed);
  }

  if (doc.contains("noise")) {
    const auto& block = doc.at("noise");
    read(block, "cv", config.noise.cv);
    read_optional(block, "seed", config.noise.seed);
  }

  if (doc.contains("qtl")) {
    const auto& block = doc.at("qtl");
    read(block, "threshold", config.qtl.threshold);
    read(block, "het_dose", config.qtl.het_dose);
  }

  if (doc.contains("ga")) {
    const auto& block = doc.at("ga");
    read(block, "population", config.ga.population);
    read(block, "generations", config.ga.generations);
    read(block, "crossover_prob", config.ga.crossover_prob);
    read(block, "mutation_prob", config.ga.mutation_prob);
    read(block, "levels", config.ga.levels);
    read(block, "elitism", config.ga.elitism);
    read_optional(block, "seed", config.ga.seed);
  }

  validate(config);
  return config;
}

ExperimentConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const json::parse_error& error) {
    throw std::runtime_error(path + ": " + error.what());
  }
}

void save_file(const std::string& path, const ExperimentConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file " + path);
  out << serialize(config);
}

void validate(const ExperimentConfig& config) {
  const auto fail = [](const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
  };
  try {
    growth::validate(config.constants);
  } catch (const std::invalid_argument& error) {
    fail("growth", error.what());
  }
  if (config.parameters.size() != kTraitCount) {
    fail("parameters", "expected " + std::to_string(kTraitCount) + " entries");
  }
  const ParameterTable canonical = default_parameter_table();
  for (int j = 0; j < kTraitCount; ++j) {
    const auto& info = config.parameters[j];
    if (info.name != canonical[j].name) {
      fail("parameters[" + std::to_string(j) + "]",
           "expected trait '" + canonical[j].name + "', got '" + info.name + "'");
    }
    if (info.reference <= 0.0) fail("parameters." + info.name, "reference must be > 0");
    if (info.half_range < 0.0 || info.half_range >= 1.0) {
      fail("parameters." + info.name, "half_range must lie in [0,1)");
    }
    if (info.integer_valued != canonical[j].integer_valued) {
      fail("parameters." + info.name, "integer flag cannot be changed");
    }
  }
  try {
    growth::validate(reference_traits(config.parameters), config.constants);
  } catch (const std::invalid_argument& error) {
    fail("parameters", error.what());
  }
  if (config.map.marker_spacing_cm <= 0.0) fail("map.marker_spacing_cm", "must be > 0");
  if (config.map.markers_between_qtl < 0) fail("map.markers_between_qtl", "must be >= 0");
  if (config.map.locus_count < kTraitCount) {
    fail("map.locus_count", "needs at least one locus per trait");
  }
  if (config.effects.preset != "diagonal" && config.effects.preset != "fig4" &&
      config.effects.preset != "custom") {
    fail("effects.preset", "unknown preset '" + config.effects.preset + "'");
  }
  if (config.effects.preset == "custom" && !config.effects.rows) {
    fail("effects.rows", "custom preset needs explicit rows");
  }
  if (config.effects.preset == "fig4" && config.map.locus_count < 15) {
    fail("map.locus_count", "the fig4 preset needs 15 loci");
  }
  if (config.effects.rows) {
    if (config.effects.rows->rows() != kTraitCount ||
        config.effects.rows->cols() != config.map.locus_count) {
      fail("effects.rows", "matrix must be traits x loci");
    }
  }
  if (config.population.size < 0) fail("population.size", "must be >= 0");
  if (config.population.generations < 2) fail("population.generations", "must be >= 2");
  if (config.noise.cv < 0.0) fail("noise.cv", "must be >= 0");
  if (config.qtl.threshold <= 0.0) fail("qtl.threshold", "must be > 0");
  if (config.qtl.het_dose < 0.0 || config.qtl.het_dose > 1.0) {
    fail("qtl.het_dose", "must lie in [0,1]");
  }
  try {
    ga::validate(ga_config(config));
  } catch (const std::invalid_argument& error) {
    fail("ga", error.what());
  }
}

std::uint64_t population_seed(const ExperimentConfig& config) {
  return config.population.seed.value_or(Rng::mix(config.seed + 1));
}

std::uint64_t noise_seed(const ExperimentConfig& config) {
  return config.noise.seed.value_or(Rng::mix(config.seed + 2));
}

std::uint64_t ga_seed(const ExperimentConfig& config) {
  return config.ga.seed.value_or(Rng::mix(config.seed + 3));
}

genetics::GeneticMap make_map(const ExperimentConfig& config) {
  return genetics::GeneticMap::regular(config.map.locus_count,
                                       config.map.marker_spacing_cm,
                                       config.map.markers_between_qtl);
}

genetics::GeneEffectMap make_effects(const ExperimentConfig& config) {
  if (config.effects.preset == "diagonal") {
    return genetics::diagonal_effects(config.parameters, config.map.locus_count);
  }
  if (config.effects.preset == "fig4") {
    return genetics::linked_effects(config.parameters, config.map.locus_count);
  }
  return genetics::custom_effects(config.parameters, *config.effects.rows);
}

genetics::GeneticContext make_context(const ExperimentConfig& config) {
  genetics::GeneticContext context;
  context.map = make_map(config);
  context.effects = make_effects(config);
  context.rules = genetics::ExpressionRules::all_additive(config.map.locus_count);
  return context;
}

qtl::ScanOptions scan_options(const ExperimentConfig& config) {
  qtl::ScanOptions options;
  options.threshold = config.qtl.threshold;
  options.het_dose = config.qtl.het_dose;
  return options;
}

ga::GaConfig ga_config(const ExperimentConfig& config) {
  ga::GaConfig ga;
  ga.population_size = config.ga.population;
  ga.generations = config.ga.generations;
  ga.crossover_prob = config.ga.crossover_prob;
  ga.mutation_prob = config.ga.mutation_prob;
  ga.elitism = config.ga.elitism;
  ga.seed = ga_seed(config);
  ga.grid = ga::parameter_grid(config.parameters, config.ga.levels);
  return ga;
}

}  // namespace vplant::config

#include "vplant/traits.hpp"

#include <cmath>
#include <stdexcept>

namespace vplant {

ParameterTable default_parameter_table() {
  return {
      {"blade_thickness", 0.028, 0.05, false},
      {"blade_resistance", 354.0, 0.05, false},
      {"sheath_sink", 0.7, 0.10, false},
      {"internode_sink", 2.17, 0.10, false},
      {"cob_sink", 202.0, 0.30, false},
      {"blade_sink_var", 0.4, 0.20, false},
      {"sheath_sink_var", 0.53, 0.20, false},
      {"internode_sink_var", 0.79, 0.20, false},
      {"cob_sink_var", 0.62, 0.30, false},
      {"seed_biomass", 0.3, 0.10, false},
      {"short_internodes", 6.0, 0.20, true},
      {"ear_cycle", 15.0, 0.20, true},
  };
}

int trait_index(const ParameterTable& table, const std::string& name) {
  for (int i = 0; i < static_cast<int>(table.size()); ++i) {
    if (table[i].name == name) return i;
  }
  throw std::invalid_argument("unknown trait name: " + name);
}

GeneticTraits reference_traits(const ParameterTable& table) {
  if (table.size() != kTraitCount) {
    throw std::invalid_argument("parameter table must have exactly " +
                                std::to_string(kTraitCount) + " entries");
  }
  Eigen::VectorXd y(kTraitCount);
  for (int i = 0; i < kTraitCount; ++i) y(i) = table[i].reference;
  return from_vector(y);
}

Eigen::VectorXd to_vector(const GeneticTraits& t) {
  Eigen::VectorXd y(kTraitCount);
  y(kBladeThickness) = t.blade_thickness;
  y(kBladeResistance) = t.blade_resistance;
  y(kSheathSink) = t.sheath_sink;
  y(kInternodeSink) = t.internode_sink;
  y(kCobSink) = t.cob_sink;
  y(kBladeSinkVar) = t.blade_sink_var;
  y(kSheathSinkVar) = t.sheath_sink_var;
  y(kInternodeSinkVar) = t.internode_sink_var;
  y(kCobSinkVar) = t.cob_sink_var;
  y(kSeedBiomass) = t.seed_biomass;
  y(kShortInternodes) = t.short_internode_count;
  y(kEarCycle) = t.ear_cycle;
  return y;
}

GeneticTraits from_vector(const Eigen::VectorXd& values) {
  if (values.size() != kTraitCount) {
    throw std::invalid_argument("trait vector must have " +
                                std::to_string(kTraitCount) + " components");
  }
  GeneticTraits t;
  t.blade_thickness = values(kBladeThickness);
  t.blade_resistance = values(kBladeResistance);
  t.blade_sink = 1.0;
  t.sheath_sink = values(kSheathSink);
  t.internode_sink = values(kInternodeSink);
  t.cob_sink = values(kCobSink);
  t.blade_sink_var = values(kBladeSinkVar);
  t.sheath_sink_var = values(kSheathSinkVar);
  t.internode_sink_var = values(kInternodeSinkVar);
  t.cob_sink_var = values(kCobSinkVar);
  t.seed_biomass = values(kSeedBiomass);
  t.short_internode_count = static_cast<int>(std::round(values(kShortInternodes)));
  t.ear_cycle = static_cast<int>(std::round(values(kEarCycle)));
  return t;
}

void round_integer_traits(Eigen::VectorXd& values) {
  values(kShortInternodes) = std::round(values(kShortInternodes));
  values(kEarCycle) = std::round(values(kEarCycle));
}

}  // namespace vplant

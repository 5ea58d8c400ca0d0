#ifndef VPLANT_TRAITS_HPP
#define VPLANT_TRAITS_HPP

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

namespace vplant {

/// The genetically determined plant parameters, in their canonical order.
/// This order is shared by the genotype-to-parameter map, the phenotype
/// files, the QTL trait selector and the optimizer grid.
enum TraitIndex : int {
  kBladeThickness = 0,
  kBladeResistance,
  kSheathSink,
  kInternodeSink,
  kCobSink,
  kBladeSinkVar,
  kSheathSinkVar,
  kInternodeSinkVar,
  kCobSinkVar,
  kSeedBiomass,
  kShortInternodes,
  kEarCycle,
  kTraitCount
};

/// Reference value and breeding range of one genetic parameter.
struct TraitInfo {
  std::string name;
  double reference = 0.0;
  double half_range = 0.0;  // relative half-width of the variation interval
  bool integer_valued = false;

  double lower() const { return reference * (1.0 - half_range); }
  double upper() const { return reference * (1.0 + half_range); }

  bool operator==(const TraitInfo&) const = default;
};

/// Always kTraitCount entries, in TraitIndex order.
using ParameterTable = std::vector<TraitInfo>;

/// Built-in reference maize parameter set with its variation ranges.
ParameterTable default_parameter_table();

int trait_index(const ParameterTable& table, const std::string& name);

/// Parameters of a single plant that are under genetic control, plus the
/// fixed blade sink that anchors the sink-strength scale.
struct GeneticTraits {
  double blade_thickness = 0.028;  // leaf specific weight, g/cm^2
  double blade_resistance = 354.0; // transpiration resistance, dimensionless
  double blade_sink = 1.0;         // normalization anchor, always 1
  double sheath_sink = 0.7;
  double internode_sink = 2.17;
  double cob_sink = 202.0;
  double blade_sink_var = 0.4;     // sink-variation parameters, in (0,1)
  double sheath_sink_var = 0.53;
  double internode_sink_var = 0.79;
  double cob_sink_var = 0.62;
  double seed_biomass = 0.3;       // initial supply Q(0), g
  int short_internode_count = 6;   // basal internodes with reduced sink
  int ear_cycle = 15;              // growth cycle of cob appearance

  bool operator==(const GeneticTraits&) const = default;
};

/// Traits built from the reference column of a parameter table.
GeneticTraits reference_traits(const ParameterTable& table);

/// Pack the twelve genetic parameters into a vector (TraitIndex order).
Eigen::VectorXd to_vector(const GeneticTraits& traits);

/// Inverse of to_vector. Integer-valued entries are rounded half away from
/// zero; blade_sink is pinned to 1.
GeneticTraits from_vector(const Eigen::VectorXd& values);

/// Round the integer-valued entries of a parameter vector in place.
void round_integer_traits(Eigen::VectorXd& values);

}  // namespace vplant

#endif  // VPLANT_TRAITS_HPP

#ifndef VPLANT_GROWTH_HPP
#define VPLANT_GROWTH_HPP

#include <Eigen/Core>
#include <array>
#include <vector>

#include "vplant/traits.hpp"

namespace vplant::growth {

enum class Organ : int { blade = 0, sheath, internode, cob, tassel };
inline constexpr int kOrganCount = 5;
const char* organ_name(Organ organ);

/// Species- and environment-level constants of the growth model. Unlike
/// GeneticTraits these are never under genetic control. The potential
/// production is calibrated once so that the reference plant reaches its
/// published cob weight; see README.
struct GrowthConstants {
  double potential_production = 11.18979081460499;  // E, calibrated
  double ground_area = 1600.0;                      // Sp, cm^2
  double light_extinction = 0.7;                    // k
  int blade_lifespan = 18;                          // photosynthetically active cycles
  int cycle_count = 36;
  int phytomer_count = 21;   // one blade+sheath+internode cohort per cycle
  int tassel_cycle = 21;
  double tassel_sink = 0.5;
  double tassel_sink_var = 0.5;
  int blade_expansion = 8;   // expansion durations, cycles
  int sheath_expansion = 8;
  int internode_expansion = 8;
  int tassel_expansion = 16;
  int cob_expansion = 0;     // 0 = expands until the final cycle
  double short_internode_sink_factor = 0.1;

  bool operator==(const GrowthConstants&) const = default;
};

/// Cob expansion duration for a plant whose ear appears at ear_cycle.
int cob_expansion_for(const GrowthConstants& constants, int ear_cycle);

/// Throw std::invalid_argument when a field is outside its legal range.
void validate(const GrowthConstants& constants);
void validate(const GeneticTraits& traits, const GrowthConstants& constants);

/// One group of identical organs appearing at the same cycle.
struct OrganCohort {
  Organ organ = Organ::blade;
  int appearance_cycle = 1;
  int count = 1;
  double sink_multiplier = 1.0;  // 1 except for basal short internodes
  double biomass = 0.0;          // accumulated, g
};

/// Normalized sink-variation kernel over an expansion of T cycles.
///
/// Weight j is proportional to x^(a-1) * (1-x)^(b-1) evaluated at the cycle
/// midpoint x = (j-1/2)/T, with a = 1+4p and b = 1+4(1-p), so that the single
/// parameter p in (0,1) moves the demand peak from early (p small) to late
/// (p large). The weights sum to one.
Eigen::VectorXd sink_kernel(double p, int T);

/// Maize organogenesis: one blade+sheath+internode cohort per cycle up to
/// phytomer_count, a reduced sink multiplier on the basal short internodes,
/// one cob cohort at ear_cycle and one tassel cohort at tassel_cycle.
std::vector<OrganCohort> organogenesis_schedule(const GrowthConstants& constants,
                                                const GeneticTraits& traits);

/// Total plant demand at the given cycle: sum over expanding cohorts of
/// count * sink_multiplier * P_o * f_o(age). Zero when nothing expands.
double demand(const std::vector<OrganCohort>& cohorts, int cycle,
              const GeneticTraits& traits, const GrowthConstants& constants);

/// Biomass produced from the photosynthetically active blade compartment:
/// Q = E*Sp/(r*k) * (1 - exp(-k*B/(e*Sp))).
double production(double active_blade_biomass, const GeneticTraits& traits,
                  const GrowthConstants& constants);

/// Per-cycle record of one simulation. Row n-1 holds the state after cycle n.
struct GrowthSeries {
  Eigen::VectorXd production;    // Q(n)
  Eigen::VectorXd demand;        // D(n)
  Eigen::VectorXd supply_ratio;  // Q(n-1)/D(n), 0 when D(n) = 0
  Eigen::VectorXd allocated;     // biomass distributed at cycle n
  Eigen::VectorXd blade_biomass; // active blade compartment after cycle n, g
  Eigen::VectorXd blade_area;    // active blade area, cm^2
  Eigen::MatrixXd compartments;  // cycle x organ type, accumulated g

  int cycles() const { return static_cast<int>(production.size()); }
  double final_cob_weight() const;
};

struct PlantState {
  int cycle = 0;
  double supply = 0.0;  // Q(cycle); Q(0) is the seed biomass
  std::vector<OrganCohort> cohorts;
};

struct CycleStats {
  double demand = 0.0;
  double allocated = 0.0;
  double active_blade_biomass = 0.0;
};

/// Deterministic single-plant simulation: schedule and sink kernels are
/// precomputed once, then step() advances the supply/demand recurrence one
/// cycle at a time.
class PlantModel {
 public:
  PlantModel(const GeneticTraits& traits, const GrowthConstants& constants);

  PlantState initial_state() const;
  CycleStats step(PlantState& state) const;
  GrowthSeries run() const;

  const std::vector<OrganCohort>& schedule() const { return schedule_; }
  const Eigen::VectorXd& kernel(Organ organ) const {
    return kernels_[static_cast<int>(organ)];
  }

 private:
  GeneticTraits traits_;
  GrowthConstants constants_;
  std::vector<OrganCohort> schedule_;
  std::array<Eigen::VectorXd, kOrganCount> kernels_;
  std::array<double, kOrganCount> sinks_{};
};

GrowthSeries simulate(const GeneticTraits& traits, const GrowthConstants& constants);

/// Cob compartment biomass after the given cycle (1-based).
double cob_weight(const GrowthSeries& series, int cycle);

/// Final cob weight over a grid of two continuous parameters.
struct SurfaceScan {
  Eigen::VectorXd x_values;
  Eigen::VectorXd y_values;
  Eigen::MatrixXd cob_weight;  // rows follow x, columns follow y
};

SurfaceScan surface_scan(const GeneticTraits& traits, const GrowthConstants& constants,
                         int x_trait, int y_trait, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int grid);

/// One-time scalar search for the potential production E that makes the given
/// traits reach the target final cob weight. Final cob weight is monotone
/// increasing in E, so a bisection suffices.
double calibrate_potential_production(const GeneticTraits& traits,
                                      const GrowthConstants& constants,
                                      double target_cob_weight);

}  // namespace vplant::growth

#endif  // VPLANT_GROWTH_HPP

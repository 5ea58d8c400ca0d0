#include "vplant/growth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vplant::growth {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

int expansion_duration(Organ organ, const GeneticTraits& traits,
                       const GrowthConstants& constants) {
  switch (organ) {
    case Organ::blade: return constants.blade_expansion;
    case Organ::sheath: return constants.sheath_expansion;
    case Organ::internode: return constants.internode_expansion;
    case Organ::cob: return cob_expansion_for(constants, traits.ear_cycle);
    case Organ::tassel: return constants.tassel_expansion;
  }
  throw std::invalid_argument("unknown organ type");
}

double sink_strength(Organ organ, const GeneticTraits& traits,
                     const GrowthConstants& constants) {
  switch (organ) {
    case Organ::blade: return traits.blade_sink;
    case Organ::sheath: return traits.sheath_sink;
    case Organ::internode: return traits.internode_sink;
    case Organ::cob: return traits.cob_sink;
    case Organ::tassel: return constants.tassel_sink;
  }
  throw std::invalid_argument("unknown organ type");
}

double sink_variation(Organ organ, const GeneticTraits& traits,
                      const GrowthConstants& constants) {
  switch (organ) {
    case Organ::blade: return traits.blade_sink_var;
    case Organ::sheath: return traits.sheath_sink_var;
    case Organ::internode: return traits.internode_sink_var;
    case Organ::cob: return traits.cob_sink_var;
    case Organ::tassel: return constants.tassel_sink_var;
  }
  throw std::invalid_argument("unknown organ type");
}

}  // namespace

const char* organ_name(Organ organ) {
  switch (organ) {
    case Organ::blade: return "blade";
    case Organ::sheath: return "sheath";
    case Organ::internode: return "internode";
    case Organ::cob: return "cob";
    case Organ::tassel: return "tassel";
  }
  return "?";
}

int cob_expansion_for(const GrowthConstants& constants, int ear_cycle) {
  if (constants.cob_expansion > 0) return constants.cob_expansion;
  return constants.cycle_count - ear_cycle + 1;
}

void validate(const GrowthConstants& c) {
  require(c.potential_production > 0.0, "potential_production must be > 0");
  require(c.ground_area > 0.0, "ground_area must be > 0");
  require(c.light_extinction > 0.0, "light_extinction must be > 0");
  require(c.blade_lifespan > 0, "blade_lifespan must be > 0");
  require(c.cycle_count >= 1, "cycle_count must be >= 1");
  require(c.phytomer_count >= 1, "phytomer_count must be >= 1");
  require(c.tassel_cycle >= 1 && c.tassel_cycle <= c.cycle_count,
          "tassel_cycle must lie in [1, cycle_count]");
  require(c.tassel_sink > 0.0, "tassel_sink must be > 0");
  require(c.tassel_sink_var > 0.0 && c.tassel_sink_var < 1.0,
          "tassel_sink_var must lie in (0,1)");
  require(c.blade_expansion >= 1, "blade_expansion must be >= 1");
  require(c.sheath_expansion >= 1, "sheath_expansion must be >= 1");
  require(c.internode_expansion >= 1, "internode_expansion must be >= 1");
  require(c.tassel_expansion >= 1, "tassel_expansion must be >= 1");
  require(c.cob_expansion >= 0, "cob_expansion must be >= 0 (0 = derived)");
  require(c.short_internode_sink_factor > 0.0 && c.short_internode_sink_factor <= 1.0,
          "short_internode_sink_factor must lie in (0,1]");
}

void validate(const GeneticTraits& t, const GrowthConstants& c) {
  validate(c);
  require(t.blade_thickness > 0.0, "blade_thickness must be > 0");
  require(t.blade_resistance > 0.0, "blade_resistance must be > 0");
  require(t.blade_sink == 1.0, "blade_sink is the anchor and must equal 1");
  require(t.sheath_sink > 0.0, "sheath_sink must be > 0");
  require(t.internode_sink > 0.0, "internode_sink must be > 0");
  require(t.cob_sink > 0.0, "cob_sink must be > 0");
  require(t.blade_sink_var > 0.0 && t.blade_sink_var < 1.0,
          "blade_sink_var must lie in (0,1)");
  require(t.sheath_sink_var > 0.0 && t.sheath_sink_var < 1.0,
          "sheath_sink_var must lie in (0,1)");
  require(t.internode_sink_var > 0.0 && t.internode_sink_var < 1.0,
          "internode_sink_var must lie in (0,1)");
  require(t.cob_sink_var > 0.0 && t.cob_sink_var < 1.0,
          "cob_sink_var must lie in (0,1)");
  require(t.short_internode_count >= 1 && t.short_internode_count < c.phytomer_count,
          "short_internode_count must lie in [1, phytomer_count)");
  require(t.ear_cycle >= 1 && t.ear_cycle <= c.cycle_count,
          "ear_cycle must lie in [1, cycle_count]");
  require(t.seed_biomass >= 0.0, "seed_biomass must be >= 0");
}

Eigen::VectorXd sink_kernel(double p, int T) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sink_kernel: p must lie in (0,1)");
  if (T < 1) throw std::domain_error("sink_kernel: T must be >= 1");
  const double a = 1.0 + 4.0 * p;
  const double b = 1.0 + 4.0 * (1.0 - p);
  Eigen::VectorXd f(T);
  for (int j = 1; j <= T; ++j) {
    const double x = (j - 0.5) / T;
    f(j - 1) = std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0);
  }
  f /= f.sum();
  return f;
}

std::vector<OrganCohort> organogenesis_schedule(const GrowthConstants& constants,
                                                const GeneticTraits& traits) {
  validate(traits, constants);
  std::vector<OrganCohort> cohorts;
  cohorts.reserve(3 * constants.phytomer_count + 2);
  for (int rank = 1; rank <= constants.phytomer_count; ++rank) {
    cohorts.push_back({Organ::blade, rank, 1, 1.0, 0.0});
    cohorts.push_back({Organ::sheath, rank, 1, 1.0, 0.0});
    const double mult = rank <= traits.short_internode_count
                            ? constants.short_internode_sink_factor
                            : 1.0;
    cohorts.push_back({Organ::internode, rank, 1, mult, 0.0});
  }
  cohorts.push_back({Organ::cob, traits.ear_cycle, 1, 1.0, 0.0});
  cohorts.push_back({Organ::tassel, constants.tassel_cycle, 1, 1.0, 0.0});
  return cohorts;
}

double demand(const std::vector<OrganCohort>& cohorts, int cycle,
              const GeneticTraits& traits, const GrowthConstants& constants) {
  if (cycle < 1) throw std::invalid_argument("demand: cycle must be >= 1");
  double total = 0.0;
  for (const auto& cohort : cohorts) {
    const int age = cycle - cohort.appearance_cycle + 1;
    const int T = expansion_duration(cohort.organ, traits, constants);
    if (age < 1 || age > T) continue;
    const auto f = sink_kernel(sink_variation(cohort.organ, traits, constants), T);
    total += cohort.count * cohort.sink_multiplier *
             sink_strength(cohort.organ, traits, constants) * f(age - 1);
  }
  return total;
}

double production(double active_blade_biomass, const GeneticTraits& traits,
                  const GrowthConstants& constants) {
  if (traits.blade_thickness == 0.0 || traits.blade_resistance == 0.0 ||
      constants.light_extinction == 0.0 || constants.ground_area == 0.0) {
    throw std::domain_error("production: e, r, k and Sp must be nonzero");
  }
  if (active_blade_biomass < 0.0) {
    throw std::invalid_argument("production: blade biomass must be >= 0");
  }
  const double asymptote = constants.potential_production * constants.ground_area /
                           (traits.blade_resistance * constants.light_extinction);
  const double exponent = constants.light_extinction * active_blade_biomass /
                          (traits.blade_thickness * constants.ground_area);
  return asymptote * (1.0 - std::exp(-exponent));
}

PlantModel::PlantModel(const GeneticTraits& traits, const GrowthConstants& constants)
    : traits_(traits), constants_(constants) {
  validate(traits_, constants_);
  schedule_ = organogenesis_schedule(constants_, traits_);
  for (int o = 0; o < kOrganCount; ++o) {
    const auto organ = static_cast<Organ>(o);
    kernels_[o] = sink_kernel(sink_variation(organ, traits_, constants_),
                              expansion_duration(organ, traits_, constants_));
    sinks_[o] = sink_strength(organ, traits_, constants_);
  }
}

PlantState PlantModel::initial_state() const {
  PlantState state;
  state.cycle = 0;
  state.supply = traits_.seed_biomass;
  state.cohorts.reserve(schedule_.size());
  return state;
}

CycleStats PlantModel::step(PlantState& state) const {
  const int cycle = state.cycle + 1;
  for (const auto& cohort : schedule_) {
    if (cohort.appearance_cycle == cycle) state.cohorts.push_back(cohort);
  }

  CycleStats stats;
  for (const auto& cohort : state.cohorts) {
    const int o = static_cast<int>(cohort.organ);
    const int age = cycle - cohort.appearance_cycle + 1;
    if (age >= 1 && age <= kernels_[o].size()) {
      stats.demand += cohort.count * cohort.sink_multiplier * sinks_[o] *
                      kernels_[o](age - 1);
    }
  }

  if (stats.demand > 0.0) {
    const double per_unit = state.supply / stats.demand;
    for (auto& cohort : state.cohorts) {
      const int o = static_cast<int>(cohort.organ);
      const int age = cycle - cohort.appearance_cycle + 1;
      if (age >= 1 && age <= kernels_[o].size()) {
        const double gain = cohort.count * cohort.sink_multiplier * sinks_[o] *
                            kernels_[o](age - 1) * per_unit;
        cohort.biomass += gain;
        stats.allocated += gain;
      }
    }
  }

  for (const auto& cohort : state.cohorts) {
    const int age = cycle - cohort.appearance_cycle + 1;
    if (cohort.organ == Organ::blade && age <= constants_.blade_lifespan) {
      stats.active_blade_biomass += cohort.biomass;
    }
  }

  state.supply = production(stats.active_blade_biomass, traits_, constants_);
  state.cycle = cycle;
  return stats;
}

GrowthSeries PlantModel::run() const {
  const int n = constants_.cycle_count;
  GrowthSeries series;
  series.production.resize(n);
  series.demand.resize(n);
  series.supply_ratio.resize(n);
  series.allocated.resize(n);
  series.blade_biomass.resize(n);
  series.blade_area.resize(n);
  series.compartments = Eigen::MatrixXd::Zero(n, kOrganCount);

  PlantState state = initial_state();
  for (int cycle = 1; cycle <= n; ++cycle) {
    const double supply_before = state.supply;
    const CycleStats stats = step(state);
    const int row = cycle - 1;
    series.production(row) = state.supply;
    series.demand(row) = stats.demand;
    series.supply_ratio(row) = stats.demand > 0.0 ? supply_before / stats.demand : 0.0;
    series.allocated(row) = stats.allocated;
    series.blade_biomass(row) = stats.active_blade_biomass;
    series.blade_area(row) = stats.active_blade_biomass / traits_.blade_thickness;
    for (const auto& cohort : state.cohorts) {
      series.compartments(row, static_cast<int>(cohort.organ)) += cohort.biomass;
    }
  }
  return series;
}

double GrowthSeries::final_cob_weight() const {
  if (compartments.rows() == 0) return 0.0;
  return compartments(compartments.rows() - 1, static_cast<int>(Organ::cob));
}

GrowthSeries simulate(const GeneticTraits& traits, const GrowthConstants& constants) {
  return PlantModel(traits, constants).run();
}

double cob_weight(const GrowthSeries& series, int cycle) {
  if (cycle < 1 || cycle > series.cycles()) {
    throw std::out_of_range("cob_weight: cycle out of range");
  }
  return series.compartments(cycle - 1, static_cast<int>(Organ::cob));
}

SurfaceScan surface_scan(const GeneticTraits& traits, const GrowthConstants& constants,
                         int x_trait, int y_trait, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int grid) {
  const auto check_axis = [](int trait) {
    if (trait < 0 || trait >= kTraitCount) {
      throw std::domain_error("surface_scan: unknown parameter id");
    }
    if (trait == kShortInternodes || trait == kEarCycle) {
      throw std::domain_error("surface_scan: axis parameters must be continuous");
    }
  };
  check_axis(x_trait);
  check_axis(y_trait);
  if (x_trait == y_trait) throw std::invalid_argument("surface_scan: axes must differ");
  if (grid < 2) throw std::invalid_argument("surface_scan: grid must be >= 2");

  SurfaceScan scan;
  scan.x_values = Eigen::VectorXd::LinSpaced(grid, x_range.first, x_range.second);
  scan.y_values = Eigen::VectorXd::LinSpaced(grid, y_range.first, y_range.second);
  scan.cob_weight.resize(grid, grid);
  Eigen::VectorXd base = to_vector(traits);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Eigen::VectorXd point = base;
      point(x_trait) = scan.x_values(i);
      point(y_trait) = scan.y_values(j);
      scan.cob_weight(i, j) = simulate(from_vector(point), constants).final_cob_weight();
    }
  }
  return scan;
}

double calibrate_potential_production(const GeneticTraits& traits,
                                      const GrowthConstants& constants,
                                      double target_cob_weight) {
  if (target_cob_weight <= 0.0) {
    throw std::invalid_argument("calibration target must be > 0");
  }
  GrowthConstants c = constants;
  const auto weight_at = [&](double e) {
    c.potential_production = e;
    return simulate(traits, c).final_cob_weight();
  };

  double lo = 1e-6;
  double hi = 1.0;
  for (int i = 0; i < 64 && weight_at(hi) < target_cob_weight; ++i) hi *= 2.0;
  if (weight_at(hi) < target_cob_weight) {
    throw std::runtime_error("calibration target unreachable");
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (weight_at(mid) < target_cob_weight ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace vplant::growth

#include <cmath>

#include "doctest.h"
#include "growth_oracle.hpp"
#include "vplant/growth.hpp"
#include "vplant/rng.hpp"

using namespace vplant;
using namespace vplant::growth;

namespace {

// Small plant exercising every organ type, short internodes and blade aging.
GrowthConstants toy_constants() {
  GrowthConstants c;
  c.potential_production = 1.0;
  c.ground_area = 100.0;
  c.light_extinction = 0.5;
  c.blade_lifespan = 2;
  c.cycle_count = 5;
  c.phytomer_count = 3;
  c.tassel_cycle = 3;
  c.tassel_sink = 0.8;
  c.tassel_sink_var = 0.5;
  c.blade_expansion = 2;
  c.sheath_expansion = 2;
  c.internode_expansion = 3;
  c.tassel_expansion = 2;
  c.short_internode_sink_factor = 0.5;
  return c;
}

GeneticTraits toy_traits() {
  GeneticTraits t;
  t.blade_thickness = 0.02;
  t.blade_resistance = 10.0;
  t.sheath_sink = 0.6;
  t.internode_sink = 1.3;
  t.cob_sink = 2.0;
  t.blade_sink_var = 0.4;
  t.sheath_sink_var = 0.5;
  t.internode_sink_var = 0.6;
  t.cob_sink_var = 0.55;
  t.seed_biomass = 0.1;
  t.short_internode_count = 1;
  t.ear_cycle = 2;
  return t;
}

growth_oracle::Config oracle_config(const GeneticTraits& t, const GrowthConstants& c) {
  growth_oracle::Config o;
  o.sink[0] = t.blade_sink;
  o.sink[1] = t.sheath_sink;
  o.sink[2] = t.internode_sink;
  o.sink[3] = t.cob_sink;
  o.sink[4] = c.tassel_sink;
  o.sink_var[0] = t.blade_sink_var;
  o.sink_var[1] = t.sheath_sink_var;
  o.sink_var[2] = t.internode_sink_var;
  o.sink_var[3] = t.cob_sink_var;
  o.sink_var[4] = c.tassel_sink_var;
  o.duration[0] = c.blade_expansion;
  o.duration[1] = c.sheath_expansion;
  o.duration[2] = c.internode_expansion;
  o.duration[3] = cob_expansion_for(c, t.ear_cycle);
  o.duration[4] = c.tassel_expansion;
  o.e = t.blade_thickness;
  o.r = t.blade_resistance;
  o.E = c.potential_production;
  o.Sp = c.ground_area;
  o.k = c.light_extinction;
  o.blade_lifespan = c.blade_lifespan;
  o.cycles = c.cycle_count;
  o.phytomers = c.phytomer_count;
  o.ear_cycle = t.ear_cycle;
  o.tassel_cycle = c.tassel_cycle;
  o.short_internodes = t.short_internode_count;
  o.short_factor = c.short_internode_sink_factor;
  o.seed = t.seed_biomass;
  return o;
}

GeneticTraits random_traits(Rng& rng) {
  const auto table = default_parameter_table();
  Eigen::VectorXd y(kTraitCount);
  for (int j = 0; j < kTraitCount; ++j) {
    y(j) = rng.uniform(table[j].lower(), table[j].upper());
  }
  return from_vector(y);
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-12, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("sink kernel: single-cycle expansion is the whole weight") {
  const auto f = sink_kernel(0.5, 1);
  REQUIRE(f.size() == 1);
  CHECK(f(0) == doctest::Approx(1.0));
}

TEST_CASE("sink kernel: p = 0.5 is symmetric about the midpoint") {
  const auto f = sink_kernel(0.5, 3);
  CHECK(f(0) == doctest::Approx(f(2)));
  CHECK(f.sum() == doctest::Approx(1.0));
}

TEST_CASE("sink kernel: p = 0.4 peaks left of the midpoint") {
  const int T = 8;
  const auto f = sink_kernel(0.4, T);
  int argmax = 0;
  f.maxCoeff(&argmax);

  // Independent evaluation of the unnormalized weights.
  int expected = 0;
  double best = -1.0;
  for (int j = 1; j <= T; ++j) {
    const double x = (j - 0.5) / T;
    const double g = std::pow(x, 1.6) * std::pow(1.0 - x, 2.4);
    if (g > best) {
      best = g;
      expected = j - 1;
    }
  }
  CHECK(argmax == expected);
  CHECK((argmax == 2 || argmax == 3));
}

TEST_CASE("sink kernel: normalization holds over random parameters") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double p = rng.uniform(0.01, 0.99);
    const int T = 1 + static_cast<int>(rng.uniform_index(33));
    CHECK(std::abs(sink_kernel(p, T).sum() - 1.0) < 1e-9);
  }
}

TEST_CASE("sink kernel: domain errors") {
  CHECK_THROWS_AS(sink_kernel(0.0, 4), std::domain_error);
  CHECK_THROWS_AS(sink_kernel(1.0, 4), std::domain_error);
  CHECK_THROWS_AS(sink_kernel(0.5, 0), std::domain_error);
}

TEST_CASE("organogenesis: cohort counts follow the schedule") {
  auto c = toy_constants();
  auto t = toy_traits();
  const auto cohorts = organogenesis_schedule(c, t);
  int blades = 0, sheaths = 0, internodes = 0, cobs = 0, tassels = 0;
  for (const auto& cohort : cohorts) {
    switch (cohort.organ) {
      case Organ::blade: ++blades; break;
      case Organ::sheath: ++sheaths; break;
      case Organ::internode: ++internodes; break;
      case Organ::cob: ++cobs; break;
      case Organ::tassel: ++tassels; break;
    }
  }
  CHECK(blades == 3);
  CHECK(sheaths == 3);
  CHECK(internodes == 3);
  CHECK(cobs == 1);
  CHECK(tassels == 1);
}

TEST_CASE("organogenesis: short internodes carry the reduced multiplier") {
  auto c = toy_constants();
  auto t = toy_traits();
  t.short_internode_count = 2;
  for (const auto& cohort : organogenesis_schedule(c, t)) {
    if (cohort.organ != Organ::internode) continue;
    const double expected = cohort.appearance_cycle <= 2 ? 0.5 : 1.0;
    CHECK(cohort.sink_multiplier == expected);
  }
}

TEST_CASE("organogenesis: reference plant has 21 metamers and the ear at cycle 15") {
  const GrowthConstants c;
  const auto t = reference_traits(default_parameter_table());
  const auto cohorts = organogenesis_schedule(c, t);
  int blades = 0;
  int ear_cycle = 0;
  for (const auto& cohort : cohorts) {
    if (cohort.organ == Organ::blade) ++blades;
    if (cohort.organ == Organ::cob) ear_cycle = cohort.appearance_cycle;
  }
  CHECK(blades == 21);
  CHECK(ear_cycle == 15);
}

TEST_CASE("demand: single blade cohort with unit kernel") {
  auto c = toy_constants();
  c.blade_expansion = 1;
  auto t = toy_traits();
  std::vector<OrganCohort> cohorts{{Organ::blade, 1, 1, 1.0, 0.0}};
  CHECK(demand(cohorts, 1, t, c) == doctest::Approx(1.0));
}

TEST_CASE("demand: nothing expanding gives zero") {
  auto c = toy_constants();
  auto t = toy_traits();
  std::vector<OrganCohort> cohorts{{Organ::blade, 1, 1, 1.0, 0.0}};
  CHECK(demand(cohorts, 10, t, c) == 0.0);  // far past the expansion window
  CHECK(demand({}, 1, t, c) == 0.0);
}

TEST_CASE("demand: two cohorts match the hand-evaluated kernel sum") {
  auto c = toy_constants();
  c.blade_expansion = 3;
  auto t = toy_traits();
  t.blade_sink_var = 0.5;
  std::vector<OrganCohort> cohorts{
      {Organ::blade, 1, 1, 1.0, 0.0},  // age 2 of 3 at cycle 2
      {Organ::cob, 2, 1, 1.0, 0.0},    // age 1 at cycle 2
  };
  const int cob_T = cob_expansion_for(c, t.ear_cycle);
  const double expected = t.blade_sink * growth_oracle::beta_weight(0.5, 3, 2) +
                          t.cob_sink * growth_oracle::beta_weight(t.cob_sink_var, cob_T, 1);
  CHECK(demand(cohorts, 2, t, c) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("production: zero blade biomass produces nothing") {
  CHECK(production(0.0, toy_traits(), toy_constants()) == 0.0);
}

TEST_CASE("production: saturates at E*Sp/(r*k)") {
  GeneticTraits t = toy_traits();
  GrowthConstants c = toy_constants();
  t.blade_thickness = 0.028;
  t.blade_resistance = 354.0;
  c.potential_production = 3.5;
  c.ground_area = 3600.0;
  c.light_extinction = 0.7;
  const double asymptote = 3.5 * 3600.0 / (354.0 * 0.7);
  CHECK(std::abs(production(1e9, t, c) - asymptote) < 1e-9 * asymptote);
}

TEST_CASE("production: closed form at a hand-checked point") {
  GeneticTraits t = toy_traits();
  GrowthConstants c = toy_constants();
  t.blade_thickness = 0.028;
  t.blade_resistance = 354.0;
  c.potential_production = 3.5;
  c.ground_area = 3600.0;
  c.light_extinction = 0.7;
  const double expected =
      3.5 * 3600.0 / (354.0 * 0.7) * (1.0 - std::exp(-0.7 * 100.0 / (0.028 * 3600.0)));
  CHECK(production(100.0, t, c) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("production: zero parameters are rejected") {
  GeneticTraits t = toy_traits();
  t.blade_thickness = 0.0;
  CHECK_THROWS_AS(production(1.0, t, toy_constants()), std::domain_error);
}

TEST_CASE("step: zero supply allocates nothing but production continues") {
  auto t = toy_traits();
  t.seed_biomass = 0.0;
  const PlantModel model(t, toy_constants());
  PlantState state = model.initial_state();
  const auto stats = model.step(state);
  CHECK(stats.allocated == 0.0);
  CHECK(stats.demand > 0.0);
  for (const auto& cohort : state.cohorts) CHECK(cohort.biomass == 0.0);
  CHECK(state.supply == 0.0);  // no blades grew
}

TEST_CASE("step: a lone expanding organ receives the whole supply") {
  // After cycle 8 only the cob is still expanding.
  GrowthConstants c = toy_constants();
  c.cycle_count = 12;
  c.phytomer_count = 2;
  c.tassel_cycle = 2;
  c.blade_lifespan = 12;
  auto t = toy_traits();
  t.ear_cycle = 5;
  t.short_internode_count = 1;
  const auto series = simulate(t, c);
  for (int n = 9; n <= 12; ++n) {
    const int row = n - 1;
    if (series.demand(row) > 0.0) {
      const double cob_gain = series.compartments(row, static_cast<int>(Organ::cob)) -
                              series.compartments(row - 1, static_cast<int>(Organ::cob));
      CHECK(close_rel(cob_gain, series.production(row - 1), 1e-12));
      CHECK(close_rel(series.allocated(row), series.production(row - 1), 1e-12));
    }
  }
}

TEST_CASE("simulate: toy plant matches the brute-force recurrence") {
  const auto t = toy_traits();
  const auto c = toy_constants();
  const auto series = simulate(t, c);
  const auto expected = growth_oracle::run(oracle_config(t, c));
  REQUIRE(series.cycles() == static_cast<int>(expected.size()));
  for (int n = 0; n < series.cycles(); ++n) {
    CHECK(close_rel(series.production(n), expected[n].Q, 1e-9));
    CHECK(close_rel(series.demand(n), expected[n].D, 1e-9));
    for (int o = 0; o < kOrganCount; ++o) {
      CHECK(close_rel(series.compartments(n, o), expected[n].compartment[o], 1e-9));
    }
  }
}

TEST_CASE("simulate: no seed biomass gives an all-zero series") {
  auto t = toy_traits();
  t.seed_biomass = 0.0;
  const auto series = simulate(t, toy_constants());
  CHECK(series.production.maxCoeff() == 0.0);
  CHECK(series.compartments.maxCoeff() == 0.0);
  CHECK(series.final_cob_weight() == 0.0);
}

TEST_CASE("simulate: thicker blades mean a lighter cob") {
  const auto c = GrowthConstants{};
  auto t = reference_traits(default_parameter_table());
  const double base = simulate(t, c).final_cob_weight();
  t.blade_thickness *= 2.0;
  const double thick = simulate(t, c).final_cob_weight();
  CHECK(thick < base);
}

TEST_CASE("simulate: identical inputs give bit-identical series") {
  const auto t = reference_traits(default_parameter_table());
  const GrowthConstants c;
  const auto a = simulate(t, c);
  const auto b = simulate(t, c);
  CHECK((a.production.array() == b.production.array()).all());
  CHECK((a.demand.array() == b.demand.array()).all());
  CHECK((a.compartments.array() == b.compartments.array()).all());
}

TEST_CASE("simulate: conservation, bounds and monotonicity on random traits") {
  Rng rng(42);
  const GrowthConstants c;
  for (int trial = 0; trial < 25; ++trial) {
    const auto t = random_traits(rng);
    const auto series = simulate(t, c);
    const double asymptote = c.potential_production * c.ground_area /
                             (t.blade_resistance * c.light_extinction);
    double previous_supply = t.seed_biomass;
    for (int n = 0; n < series.cycles(); ++n) {
      if (series.demand(n) > 0.0) {
        CHECK(std::abs(series.allocated(n) - previous_supply) <=
              1e-9 * std::max(1e-12, previous_supply));
      } else {
        CHECK(series.allocated(n) == 0.0);
      }
      CHECK(series.production(n) >= 0.0);
      CHECK(series.production(n) < asymptote);
      if (n > 0) {
        for (int o = 0; o < kOrganCount; ++o) {
          CHECK(series.compartments(n, o) >= series.compartments(n - 1, o));
        }
      }
      previous_supply = series.production(n);
    }
  }
}

TEST_CASE("cob weight: zero before the ear appears, final value at the end") {
  const auto t = toy_traits();
  const auto c = toy_constants();
  const auto series = simulate(t, c);
  CHECK(cob_weight(series, t.ear_cycle - 1) == 0.0);
  CHECK(cob_weight(series, c.cycle_count) == series.final_cob_weight());
  CHECK_THROWS_AS(cob_weight(series, 0), std::out_of_range);
  CHECK_THROWS_AS(cob_weight(series, c.cycle_count + 1), std::out_of_range);
}

TEST_CASE("cob weight: toy series matches the oracle everywhere") {
  const auto t = toy_traits();
  const auto c = toy_constants();
  const auto series = simulate(t, c);
  const auto expected = growth_oracle::run(oracle_config(t, c));
  for (int n = 1; n <= c.cycle_count; ++n) {
    CHECK(close_rel(cob_weight(series, n), expected[n - 1].compartment[3], 1e-9));
  }
}

TEST_CASE("surface scan: grid cells equal individual runs") {
  const auto t = toy_traits();
  const auto c = toy_constants();
  const auto scan = surface_scan(t, c, kCobSink, kCobSinkVar, {1.5, 2.5}, {0.4, 0.7}, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Eigen::VectorXd y = to_vector(t);
      y(kCobSink) = scan.x_values(i);
      y(kCobSinkVar) = scan.y_values(j);
      CHECK(scan.cob_weight(i, j) ==
            simulate(from_vector(y), c).final_cob_weight());
    }
  }
}

TEST_CASE("surface scan: degenerate range gives constant rows") {
  const auto scan = surface_scan(toy_traits(), toy_constants(), kCobSink, kCobSinkVar,
                                 {2.0, 2.0}, {0.4, 0.7}, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(scan.cob_weight(0, j) == scan.cob_weight(1, j));
    CHECK(scan.cob_weight(1, j) == scan.cob_weight(2, j));
  }
}

TEST_CASE("surface scan: integer parameters are rejected as axes") {
  CHECK_THROWS_AS(surface_scan(toy_traits(), toy_constants(), kEarCycle, kCobSink,
                               {1.0, 2.0}, {1.0, 2.0}, 2),
                  std::domain_error);
  CHECK_THROWS_AS(surface_scan(toy_traits(), toy_constants(), kCobSink, kCobSink,
                               {1.0, 2.0}, {1.0, 2.0}, 2),
                  std::invalid_argument);
}

TEST_CASE("calibration: reference plant hits the target weight") {
  GrowthConstants c;
  const auto t = reference_traits(default_parameter_table());
  const double calibrated = calibrate_potential_production(t, c, 773.0);
  c.potential_production = calibrated;
  CHECK(simulate(t, c).final_cob_weight() == doctest::Approx(773.0).epsilon(1e-6));
}

// Command-line runner for the virtual breeding experiments. Every subcommand
// is a pure function of the config document and the master seed, and writes
// CSV files into the output directory.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vplant/config.hpp"
#include "vplant/csv.hpp"

namespace fs = std::filesystem;
using namespace vplant;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

config::ExperimentConfig load_config(const GlobalOptions& options) {
  config::ExperimentConfig cfg;
  if (!options.config_path.empty()) {
    cfg = config::load_file(options.config_path);
  } else {
    config::validate(cfg);
  }
  if (options.seed_set) cfg.seed = options.seed;
  if (!options.out_dir.empty()) cfg.output_dir = options.out_dir;
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::string out_path(const config::ExperimentConfig& cfg, const std::string& name) {
  return (fs::path(cfg.output_dir) / name).string();
}

GeneticTraits overridden_traits(const config::ExperimentConfig& cfg,
                                const std::vector<std::string>& overrides) {
  Eigen::VectorXd values = to_vector(reference_traits(cfg.parameters));
  for (const auto& item : overrides) {
    const auto equals = item.find('=');
    if (equals == std::string::npos) {
      throw std::invalid_argument("--set expects name=value, got '" + item + "'");
    }
    const std::string name = item.substr(0, equals);
    values(trait_index(cfg.parameters, name)) = std::stod(item.substr(equals + 1));
  }
  return from_vector(values);
}

int cmd_simulate(const GlobalOptions& options, const std::vector<std::string>& overrides) {
  const auto cfg = load_config(options);
  const auto traits = overridden_traits(cfg, overrides);
  const auto series = growth::simulate(traits, cfg.constants);
  csv::write_series(out_path(cfg, "series.csv"), series);
  std::printf("final cob weight: %.6g g\n", series.final_cob_weight());
  std::printf("wrote %s\n", out_path(cfg, "series.csv").c_str());
  return 0;
}

int cmd_population(const GlobalOptions& options, int size_override,
                   int generations_override) {
  auto cfg = load_config(options);
  if (size_override >= 0) cfg.population.size = size_override;
  if (generations_override >= 0) cfg.population.generations = generations_override;
  config::validate(cfg);

  const auto context = config::make_context(cfg);
  auto population = genetics::make_ril(
      genetics::founder_genome(0, context.map), genetics::founder_genome(1, context.map),
      cfg.population.generations, cfg.population.size, context,
      config::population_seed(cfg));
  genetics::simulate_phenotypes(population, cfg.constants);
  csv::write_population(out_path(cfg, "map.csv"), out_path(cfg, "genotypes.csv"),
                        out_path(cfg, "phenotypes.csv"), population, context.map,
                        cfg.parameters);
  std::printf("population: %d individuals, %d markers, heterozygosity %.4g\n",
              population.size(), context.map.markers(),
              genetics::mean_heterozygosity(population, context.map));
  std::printf("wrote %s, %s, %s\n", out_path(cfg, "map.csv").c_str(),
              out_path(cfg, "genotypes.csv").c_str(),
              out_path(cfg, "phenotypes.csv").c_str());
  return 0;
}

int cmd_qtl(const GlobalOptions& options, const std::string& trait,
            const std::string& pop_dir, double noise_cv) {
  const auto cfg = load_config(options);
  const std::string dir = pop_dir.empty() ? cfg.output_dir : pop_dir;
  auto table = csv::load_population((fs::path(dir) / "map.csv").string(),
                                    (fs::path(dir) / "genotypes.csv").string(),
                                    (fs::path(dir) / "phenotypes.csv").string());
  const double cv = noise_cv >= 0.0 ? noise_cv : cfg.noise.cv;
  if (cv > 0.0) {
    Rng rng(config::noise_seed(cfg));
    genetics::apply_noise(table.trait(trait), cv, rng);
  }
  const auto profile = qtl::scan(table, trait, config::scan_options(cfg));
  const auto hits = qtl::detect(profile, cfg.qtl.threshold);
  csv::write_profile(out_path(cfg, "lod_" + trait + ".csv"), profile);
  csv::write_hits(out_path(cfg, "hits_" + trait + ".csv"), hits);
  std::printf("%s: %zu QTL at threshold %.3g\n", trait.c_str(), hits.size(),
              cfg.qtl.threshold);
  for (const auto& hit : hits) {
    std::printf("  marker %d at %.6g cM, LOD %.6g\n", hit.marker + 1, hit.position_cm,
                hit.lod);
  }
  return 0;
}

int cmd_optimize(const GlobalOptions& options, int population_override,
                 int generations_override) {
  auto cfg = load_config(options);
  if (population_override >= 0) cfg.ga.population = population_override;
  if (generations_override >= 0) cfg.ga.generations = generations_override;
  config::validate(cfg);

  const auto ga_cfg = config::ga_config(cfg);
  const auto result = ga::evolve(ga_cfg, ga::cob_weight_fitness(cfg.constants));
  const double reference_weight =
      growth::simulate(reference_traits(cfg.parameters), cfg.constants).final_cob_weight();
  const auto summary = ga::report(result, ga_cfg, cfg.parameters, reference_weight);
  csv::write_history(out_path(cfg, "ga_history.csv"), result.history);
  csv::write_ideotype(out_path(cfg, "ideotype.csv"), summary);

  std::printf("%-22s %12s %12s %8s\n", "parameter", "reference", "optimal", "flag");
  for (const auto& row : summary.rows) {
    std::printf("%-22s %12.6g %12.6g %8s\n", row.name.c_str(), row.reference,
                row.optimal, row.boundary.c_str());
  }
  std::printf("%-22s %12.6g %12.6g\n", "cob_weight", summary.reference_weight,
              summary.optimized_weight);
  return 0;
}

int cmd_surface(const GlobalOptions& options, const std::string& x_name,
                const std::string& y_name, int grid, const std::string& x_range,
                const std::string& y_range) {
  const auto cfg = load_config(options);
  const auto parse_range = [&](const std::string& text,
                               int trait) -> std::pair<double, double> {
    if (text.empty()) {
      return {cfg.parameters[trait].lower(), cfg.parameters[trait].upper()};
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("range expects lo:hi, got '" + text + "'");
    }
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  };
  const int x_trait = trait_index(cfg.parameters, x_name);
  const int y_trait = trait_index(cfg.parameters, y_name);
  const auto scan = growth::surface_scan(reference_traits(cfg.parameters), cfg.constants,
                                         x_trait, y_trait, parse_range(x_range, x_trait),
                                         parse_range(y_range, y_trait), grid);
  csv::write_surface(out_path(cfg, "surface.csv"), scan, x_name, y_name);
  Eigen::Index best_x = 0, best_y = 0;
  scan.cob_weight.maxCoeff(&best_x, &best_y);
  std::printf("maximum cob weight %.6g g at %s=%.6g, %s=%.6g\n",
              scan.cob_weight(best_x, best_y), x_name.c_str(), scan.x_values(best_x),
              y_name.c_str(), scan.y_values(best_y));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual maize breeding toolkit: growth model, mapping populations, "
               "QTL scans and ideotype optimization"};
  app.require_subcommand(1);

  GlobalOptions options;
  app.add_option("--config", options.config_path, "experiment config (JSON)");
  app.add_option("--out", options.out_dir, "output directory (overrides config)");
  auto* seed_option =
      app.add_option("--seed", options.seed, "master seed (overrides config)");

  auto* simulate = app.add_subcommand("simulate", "run one plant and export its series");
  std::vector<std::string> overrides;
  simulate->add_option("--set", overrides, "trait override, name=value (repeatable)");

  auto* population =
      app.add_subcommand("population", "build a mapping population (three files)");
  int size_override = -1;
  int generations_override = -1;
  population->add_option("--size", size_override, "number of lineages");
  population->add_option("--generations", generations_override,
                         "selfing depth (6 = standard inbred lines)");

  auto* qtl = app.add_subcommand("qtl", "single-marker scan of one trait");
  std::string trait;
  std::string pop_dir;
  double noise_cv = -1.0;
  qtl->add_option("--trait", trait, "trait column to scan")->required();
  qtl->add_option("--pop", pop_dir, "directory with the three population files");
  qtl->add_option("--noise-cv", noise_cv, "measurement noise before scanning");

  auto* optimize = app.add_subcommand("optimize", "search the allelic grid for the "
                                                  "heaviest cob");
  int ga_population = -1;
  int ga_generations = -1;
  optimize->add_option("--population", ga_population, "optimizer population size");
  optimize->add_option("--generations", ga_generations, "optimizer generations");

  auto* surface = app.add_subcommand("surface", "cob weight over a two-parameter grid");
  std::string x_name = "cob_sink";
  std::string y_name = "cob_sink_var";
  std::string x_range, y_range;
  int grid = 20;
  surface->add_option("--x", x_name, "first axis trait");
  surface->add_option("--y", y_name, "second axis trait");
  surface->add_option("--grid", grid, "grid resolution per axis");
  surface->add_option("--x-range", x_range, "lo:hi (defaults to the breeding range)");
  surface->add_option("--y-range", y_range, "lo:hi (defaults to the breeding range)");

  CLI11_PARSE(app, argc, argv);
  options.seed_set = seed_option->count() > 0;

  try {
    if (simulate->parsed()) return cmd_simulate(options, overrides);
    if (population->parsed()) {
      return cmd_population(options, size_override, generations_override);
    }
    if (qtl->parsed()) return cmd_qtl(options, trait, pop_dir, noise_cv);
    if (optimize->parsed()) return cmd_optimize(options, ga_population, ga_generations);
    if (surface->parsed()) {
      return cmd_surface(options, x_name, y_name, grid, x_range, y_range);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}

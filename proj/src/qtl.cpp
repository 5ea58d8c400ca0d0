#include "vplant/qtl.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace vplant::qtl {

const Eigen::VectorXd& PopulationTable::trait(const std::string& name) const {
  for (std::size_t i = 0; i < trait_names.size(); ++i) {
    if (trait_names[i] == name) return trait_columns[i];
  }
  throw std::invalid_argument("unknown trait name: " + name);
}

Eigen::VectorXd& PopulationTable::trait(const std::string& name) {
  return const_cast<Eigen::VectorXd&>(std::as_const(*this).trait(name));
}

PopulationTable make_table(const genetics::MappingPopulation& population,
                           const genetics::GeneticMap& map,
                           const ParameterTable& parameters) {
  PopulationTable table;
  table.marker_cm = map.marker_cm;
  table.genotype_codes.reserve(population.individuals.size());
  for (const auto& individual : population.individuals) {
    table.genotype_codes.push_back(individual.codes);
  }
  const int n = population.size();
  for (int j = 0; j < kTraitCount; ++j) {
    Eigen::VectorXd column(n);
    for (int i = 0; i < n; ++i) column(i) = population.individuals[i].trait_values(j);
    table.trait_names.push_back(parameters[j].name);
    table.trait_columns.push_back(std::move(column));
  }
  Eigen::VectorXd cob(n);
  for (int i = 0; i < n; ++i) cob(i) = population.individuals[i].cob_weight;
  table.trait_names.push_back("cob_weight");
  table.trait_columns.push_back(std::move(cob));
  return table;
}

std::optional<double> single_marker_lod(const Eigen::VectorXd& trait_values,
                                        const std::vector<char>& codes,
                                        const ScanOptions& options) {
  const auto n = static_cast<Eigen::Index>(codes.size());
  if (trait_values.size() != n) {
    throw std::invalid_argument("trait values and genotype codes must align");
  }
  if (n < 3) return std::nullopt;

  Eigen::VectorXd dose(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (codes[i]) {
      case '1': dose(i) = 0.0; break;
      case 'H': dose(i) = options.het_dose; break;
      case '2': dose(i) = 1.0; break;
      default: throw std::invalid_argument("genotype codes must be 1, 2 or H");
    }
  }

  // Two-pass centered sums keep the score affine-invariant to rounding.
  const double x_mean = dose.mean();
  const double y_mean = trait_values.mean();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dx = dose(i) - x_mean;
    const double dy = trait_values(i) - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) return std::nullopt;  // monomorphic marker
  if (syy <= 0.0) return 0.0;           // constant trait

  const double rss1 = std::max(0.0, syy - sxy * sxy / sxx);
  if (rss1 <= 0.0) return options.lod_cap;
  const double lod = 0.5 * static_cast<double>(n) * std::log10(syy / rss1);
  return std::min(lod, options.lod_cap);
}

LodProfile scan(const PopulationTable& table, const std::string& trait_name,
                const ScanOptions& options) {
  const Eigen::VectorXd& values = table.trait(trait_name);
  LodProfile profile;
  profile.trait_name = trait_name;
  profile.threshold = options.threshold;
  profile.markers.reserve(table.markers());
  std::vector<char> codes(table.individuals());
  for (int m = 0; m < table.markers(); ++m) {
    for (int i = 0; i < table.individuals(); ++i) {
      const auto& row = table.genotype_codes[i];
      if (static_cast<int>(row.size()) != table.markers()) {
        throw std::invalid_argument("genotype row does not match the marker count");
      }
      codes[i] = row[m];
    }
    const auto lod = single_marker_lod(values, codes, options);
    profile.markers.push_back(
        {m, table.marker_cm[m], lod.value_or(0.0), lod.has_value()});
  }
  return profile;
}

std::vector<QtlHit> detect(const LodProfile& profile, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
  const auto& markers = profile.markers;
  const int n = static_cast<int>(markers.size());
  const auto above = [&](int i) {
    return markers[i].tested && markers[i].lod >= threshold;
  };

  // One detected QTL per contiguous above-threshold stretch, reported at the
  // stretch's maximum (the lowest index when scores tie). Markers linked to
  // the same locus stay above threshold together, so they collapse into a
  // single hit instead of littering the shoulder with extra peaks.
  std::vector<QtlHit> hits;
  int i = 0;
  while (i < n) {
    if (!above(i)) {
      ++i;
      continue;
    }
    int best = i;
    int j = i;
    while (j < n && above(j)) {
      if (markers[j].lod > markers[best].lod) best = j;
      ++j;
    }
    hits.push_back({markers[best].marker, markers[best].position_cm, markers[best].lod});
    i = j;
  }
  return hits;
}

DetectionComparison compare_detection(const PopulationTable& table,
                                      const std::vector<std::string>& parameter_traits,
                                      const std::string& phenotype_trait,
                                      const ScanOptions& options) {
  DetectionComparison comparison;
  std::set<int> parameter_markers;
  for (const auto& name : parameter_traits) {
    auto hits = detect(scan(table, name, options), options.threshold);
    for (const auto& hit : hits) parameter_markers.insert(hit.marker);
    comparison.parameter_hits.emplace_back(name, std::move(hits));
  }
  comparison.phenotype_hits = detect(scan(table, phenotype_trait, options), options.threshold);
  std::set<int> phenotype_markers;
  for (const auto& hit : comparison.phenotype_hits) phenotype_markers.insert(hit.marker);
  for (int marker : parameter_markers) {
    if (!phenotype_markers.contains(marker)) {
      comparison.parameter_only_markers.push_back(marker);
    }
  }
  return comparison;
}

}  // namespace vplant::qtl

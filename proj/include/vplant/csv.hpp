#ifndef VPLANT_CSV_HPP
#define VPLANT_CSV_HPP

#include <string>

#include "vplant/ga.hpp"
#include "vplant/genetics.hpp"
#include "vplant/growth.hpp"
#include "vplant/qtl.hpp"

namespace vplant::csv {

/// Growth series: cycle,Q,D,Q_over_D,blade_area and one biomass column per
/// organ type.
void write_series(const std::string& path, const growth::GrowthSeries& series);

/// The three mapping-population files.
///   map file:       marker,position_cM
///   genotype file:  id plus one column per marker, symbols 1/2/H
///   phenotype file: id plus one column per parameter trait and cob_weight
void write_population(const std::string& map_path, const std::string& genotype_path,
                      const std::string& phenotype_path,
                      const genetics::MappingPopulation& population,
                      const genetics::GeneticMap& map, const ParameterTable& parameters);

/// Read the three files back into the flat table the scanners consume.
qtl::PopulationTable load_population(const std::string& map_path,
                                     const std::string& genotype_path,
                                     const std::string& phenotype_path);

/// LOD profile and detected peaks: marker,position_cM,lod.
void write_profile(const std::string& path, const qtl::LodProfile& profile);
void write_hits(const std::string& path, const std::vector<qtl::QtlHit>& hits);

/// Optimizer history: generation,best_fitness,mean_fitness.
void write_history(const std::string& path, const std::vector<ga::GenerationStat>& history);

/// Ideotype table: parameter,reference,range,optimal,boundary_flag, with a
/// final cob_weight row comparing the reference and optimized plants.
void write_ideotype(const std::string& path, const ga::IdeotypeReport& report);

/// Long-format response surface: x,y,cob_weight.
void write_surface(const std::string& path, const growth::SurfaceScan& scan,
                   const std::string& x_name, const std::string& y_name);

/// Marker names as they appear in the map and genotype headers (m01, m02, ...).
std::string marker_label(int marker, int marker_count);

}  // namespace vplant::csv

#endif  // VPLANT_CSV_HPP

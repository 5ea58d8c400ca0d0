#ifndef VPLANT_QTL_HPP
#define VPLANT_QTL_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "vplant/genetics.hpp"

namespace vplant::qtl {

/// Flat view of a mapping population as the three data files present it:
/// marker positions, per-individual genotype strings and named trait columns.
struct PopulationTable {
  std::vector<double> marker_cm;
  std::vector<std::string> genotype_codes;   // one string over {1,2,H} each
  std::vector<std::string> trait_names;
  std::vector<Eigen::VectorXd> trait_columns;

  int individuals() const { return static_cast<int>(genotype_codes.size()); }
  int markers() const { return static_cast<int>(marker_cm.size()); }
  const Eigen::VectorXd& trait(const std::string& name) const;
  Eigen::VectorXd& trait(const std::string& name);
};

/// Table form of a population: the twelve parameter traits plus cob weight.
PopulationTable make_table(const genetics::MappingPopulation& population,
                           const genetics::GeneticMap& map,
                           const ParameterTable& parameters);

struct ScanOptions {
  double het_dose = 0.5;   // gene dose assigned to H genotypes
  double lod_cap = 50.0;   // stands in for +inf on zero-residual fits
  double threshold = 3.0;  // detection threshold recorded in the profile
};

struct MarkerLod {
  int marker = 0;
  double position_cm = 0.0;
  double lod = 0.0;
  bool tested = true;  // false when the marker genotypes admit no test
};

struct LodProfile {
  std::string trait_name;
  double threshold = 3.0;
  std::vector<MarkerLod> markers;
};

struct QtlHit {
  int marker = 0;
  double position_cm = 0.0;
  double lod = 0.0;
};

/// Single-marker likelihood-ratio score. Genotypes are coded as gene doses
/// {1 -> 0, H -> het_dose, 2 -> 1} and a Gaussian linear model is fitted by
/// least squares; LOD = (n/2) * log10(RSS0/RSS1), which is the closed form of
/// -log10(L0/L1) with the variance profiled out. Returns nullopt when no test
/// is possible (fewer than three plants or a monomorphic marker).
std::optional<double> single_marker_lod(const Eigen::VectorXd& trait_values,
                                        const std::vector<char>& codes,
                                        const ScanOptions& options = {});

LodProfile scan(const PopulationTable& table, const std::string& trait_name,
                const ScanOptions& options = {});

/// Peaks of a profile: every contiguous stretch of markers at or above the
/// threshold collapses into one hit at its maximum; ties inside a stretch
/// break to the lowest marker index.
std::vector<QtlHit> detect(const LodProfile& profile, double threshold);

struct DetectionComparison {
  std::vector<std::pair<std::string, std::vector<QtlHit>>> parameter_hits;
  std::vector<QtlHit> phenotype_hits;
  std::vector<int> parameter_only_markers;  // found via parameters, missed on the phenotype
};

/// Contrast of QTL detection on model parameters against detection on an
/// integrated phenotypic trait.
DetectionComparison compare_detection(const PopulationTable& table,
                                      const std::vector<std::string>& parameter_traits,
                                      const std::string& phenotype_trait,
                                      const ScanOptions& options = {});

}  // namespace vplant::qtl

#endif  // VPLANT_QTL_HPP

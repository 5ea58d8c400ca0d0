#ifndef VPLANT_GENETICS_HPP
#define VPLANT_GENETICS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vplant/growth.hpp"
#include "vplant/rng.hpp"
#include "vplant/traits.hpp"

namespace vplant::genetics {

/// Expressed allele effects at the N loci (the fictitious third chromosome).
using AlleleVector = Eigen::VectorXd;

/// One homolog as the founder origin (0 or 1) at every marker position.
/// Allele effect values exist only at the gene loci and are looked up from
/// the founder origin there; tracking origin along the whole marker grid is
/// what makes marker genotyping exact after any number of meioses.
struct Chromosome {
  std::vector<std::uint8_t> origin;
};

struct DiploidGenome {
  Chromosome c1;
  Chromosome c2;
};

/// Marker grid of one linkage group with the genes placed exactly at markers.
struct GeneticMap {
  std::vector<double> marker_cm;  // strictly increasing positions
  std::vector<int> locus_marker;  // locus -> marker index

  int markers() const { return static_cast<int>(marker_cm.size()); }
  int loci() const { return static_cast<int>(locus_marker.size()); }
  double length_cm() const { return marker_cm.empty() ? 0.0 : marker_cm.back(); }

  /// Regular geometry: loci every (markers_between + 1) marker steps starting
  /// at position 0, markers every marker_spacing_cm.
  static GeneticMap regular(int locus_count, double marker_spacing_cm,
                            int markers_between);
};

enum class Expression : std::uint8_t { additive, dominant };

/// Per-locus expression rule. For a dominant locus the allele of
/// dominant_founder is the one expressed in heterozygotes (the first-listed
/// allele of the dominance ordering).
struct ExpressionRules {
  std::vector<Expression> mode;
  std::vector<std::uint8_t> dominant_founder;

  static ExpressionRules all_additive(int locus_count);
};

/// Genotype-to-parameter bridge: Y = D * A * C3 where A holds the gene
/// weights, D rescales each row so that C3 = 1 reproduces the reference
/// parameter vector, and spread(g) is the relative half-range separating the
/// two founder alleles at locus g.
struct GeneEffectMap {
  Eigen::MatrixXd weights;            // A, traits x loci
  Eigen::VectorXd reference;          // Yr
  Eigen::VectorXd spread;             // per-locus allele half-range
  std::vector<bool> integer_valued;   // per trait

  int traits() const { return static_cast<int>(weights.rows()); }
  int loci() const { return static_cast<int>(weights.cols()); }

  /// Diagonal of D, recomputed from A and Yr. Throws on a nonpositive row sum.
  Eigen::VectorXd scaling_diagonal() const;

  /// Founder 0 carries 1 - spread(locus), founder 1 carries 1 + spread(locus).
  double founder_allele(int founder, int locus) const;
};

/// One gene per parameter on the leading diagonal; surplus loci are inert.
GeneEffectMap diagonal_effects(const ParameterTable& table, int locus_count);

/// Multi-gene preset with pleiotropic rows (config name "fig4"): parameters
/// depend on one to three loci with unequal weights and several loci act on
/// more than one parameter.
GeneEffectMap linked_effects(const ParameterTable& table, int locus_count);

/// Arbitrary weight matrix with spreads derived from the dominant row of
/// each column.
GeneEffectMap custom_effects(const ParameterTable& table, const Eigen::MatrixXd& weights);

/// Founder pair: parent 0 is homozygous for the low allele everywhere,
/// parent 1 for the high allele.
DiploidGenome founder_genome(int founder, const GeneticMap& map);

/// Allele effect values carried by one homolog at the gene loci.
AlleleVector allele_values(const Chromosome& chromosome, const GeneticMap& map,
                           const GeneEffectMap& effects);

/// Expressed allele effects: additive loci average the two homologs, dominant
/// loci take the dominant founder's allele.
AlleleVector express(const DiploidGenome& genome, const ExpressionRules& rules,
                     const GeneticMap& map, const GeneEffectMap& effects);

/// Parameter vector Y = D*A*C3 with integer-valued entries rounded half away
/// from zero.
Eigen::VectorXd trait_vector(const AlleleVector& c3, const GeneEffectMap& effects);

GeneticTraits genotype_to_traits(const AlleleVector& c3, const GeneEffectMap& effects);

/// Meiosis: the crossover count is Poisson(map length / 100 cM), cut points
/// fall uniformly on the map, and reading alternates between the two homologs
/// starting from a fair-coin choice.
Chromosome gamete(const DiploidGenome& genome, const GeneticMap& map, Rng& rng);

DiploidGenome cross(const DiploidGenome& parent_a, const DiploidGenome& parent_b,
                    const GeneticMap& map, Rng& rng);

/// Marker genotype string over {1,2,H}: 1 when both homologs descend from
/// parent 1, 2 for parent 2, H otherwise.
std::string marker_codes(const DiploidGenome& genome, const GeneticMap& map);

struct Individual {
  DiploidGenome genome;
  std::string codes;
  Eigen::VectorXd trait_values;  // expressed parameter vector
  GeneticTraits traits;
  double cob_weight = std::numeric_limits<double>::quiet_NaN();
};

struct MappingPopulation {
  int generations = 0;
  std::uint64_t seed = 0;
  std::vector<Individual> individuals;

  int size() const { return static_cast<int>(individuals.size()); }
};

struct GeneticContext {
  GeneticMap map;
  ExpressionRules rules;
  GeneEffectMap effects;
};

/// Recombinant inbred lines by single-seed descent: each lineage is an F1
/// from the two homozygous parents selfed (generations - 1) times. Lineages
/// draw independent sub-streams from the seed, so the population is
/// reproducible regardless of evaluation order.
MappingPopulation make_ril(const DiploidGenome& parent1, const DiploidGenome& parent2,
                           int generations, int size, const GeneticContext& context,
                           std::uint64_t seed);

/// Fill in each individual's final cob weight by running the growth model.
void simulate_phenotypes(MappingPopulation& population,
                         const growth::GrowthConstants& constants);

/// Fraction of gene loci with homologs of different origin, averaged over
/// individuals.
double mean_heterozygosity(const MappingPopulation& population, const GeneticMap& map);

/// Multiplicative white measurement noise: v -> v * (1 + eps) with
/// eps ~ Normal(0, cv).
void apply_noise(Eigen::VectorXd& values, double cv, Rng& rng);

}  // namespace vplant::genetics

#endif  // VPLANT_GENETICS_HPP

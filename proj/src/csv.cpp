#include "vplant/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vplant::csv {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.empty()) throw std::runtime_error(path + ": missing header row");
  return rows;
}

}  // namespace

std::string marker_label(int marker, int marker_count) {
  int width = 1;
  for (int v = marker_count; v >= 10; v /= 10) ++width;
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "m%0*d", width, marker + 1);
  return buffer;
}

void write_series(const std::string& path, const growth::GrowthSeries& series) {
  auto out = open_out(path);
  out << "cycle,Q,D,Q_over_D,blade_area";
  for (int o = 0; o < growth::kOrganCount; ++o) {
    out << ',' << growth::organ_name(static_cast<growth::Organ>(o)) << "_biomass";
  }
  out << '\n';
  for (int row = 0; row < series.cycles(); ++row) {
    out << row + 1 << ',' << format_double(series.production(row)) << ','
        << format_double(series.demand(row)) << ','
        << format_double(series.supply_ratio(row)) << ','
        << format_double(series.blade_area(row));
    for (int o = 0; o < growth::kOrganCount; ++o) {
      out << ',' << format_double(series.compartments(row, o));
    }
    out << '\n';
  }
}

void write_population(const std::string& map_path, const std::string& genotype_path,
                      const std::string& phenotype_path,
                      const genetics::MappingPopulation& population,
                      const genetics::GeneticMap& map, const ParameterTable& parameters) {
  {
    auto out = open_out(map_path);
    out << "marker,position_cM\n";
    for (int m = 0; m < map.markers(); ++m) {
      out << marker_label(m, map.markers()) << ',' << format_double(map.marker_cm[m])
          << '\n';
    }
  }
  {
    auto out = open_out(genotype_path);
    out << "id";
    for (int m = 0; m < map.markers(); ++m) out << ',' << marker_label(m, map.markers());
    out << '\n';
    for (int i = 0; i < population.size(); ++i) {
      out << i + 1;
      for (char code : population.individuals[i].codes) out << ',' << code;
      out << '\n';
    }
  }
  {
    auto out = open_out(phenotype_path);
    out << "id";
    for (const auto& info : parameters) out << ',' << info.name;
    out << ",cob_weight\n";
    for (int i = 0; i < population.size(); ++i) {
      const auto& individual = population.individuals[i];
      out << i + 1;
      for (int j = 0; j < kTraitCount; ++j) {
        out << ',' << format_double(individual.trait_values(j));
      }
      out << ',' << format_double(individual.cob_weight) << '\n';
    }
  }
}

qtl::PopulationTable load_population(const std::string& map_path,
                                     const std::string& genotype_path,
                                     const std::string& phenotype_path) {
  qtl::PopulationTable table;

  const auto map_rows = read_rows(map_path);
  for (std::size_t r = 1; r < map_rows.size(); ++r) {
    if (map_rows[r].size() < 2) throw std::runtime_error(map_path + ": malformed row");
    table.marker_cm.push_back(std::stod(map_rows[r][1]));
  }

  const auto genotype_rows = read_rows(genotype_path);
  const std::size_t marker_columns = genotype_rows[0].size() - 1;
  if (marker_columns != table.marker_cm.size()) {
    throw std::runtime_error(genotype_path + ": marker columns do not match the map");
  }
  for (std::size_t r = 1; r < genotype_rows.size(); ++r) {
    const auto& row = genotype_rows[r];
    if (row.size() != marker_columns + 1) {
      throw std::runtime_error(genotype_path + ": malformed row");
    }
    std::string codes;
    codes.reserve(marker_columns);
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c].size() != 1) throw std::runtime_error(genotype_path + ": bad code");
      codes.push_back(row[c][0]);
    }
    table.genotype_codes.push_back(std::move(codes));
  }

  const auto phenotype_rows = read_rows(phenotype_path);
  const auto& header = phenotype_rows[0];
  if (header.size() < 2) throw std::runtime_error(phenotype_path + ": missing traits");
  const std::size_t individuals = phenotype_rows.size() - 1;
  if (individuals != table.genotype_codes.size()) {
    throw std::runtime_error(phenotype_path + ": rows do not match the genotype file");
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    table.trait_names.push_back(header[c]);
    Eigen::VectorXd column(individuals);
    for (std::size_t r = 1; r < phenotype_rows.size(); ++r) {
      if (phenotype_rows[r].size() != header.size()) {
        throw std::runtime_error(phenotype_path + ": malformed row");
      }
      column(static_cast<Eigen::Index>(r - 1)) = std::stod(phenotype_rows[r][c]);
    }
    table.trait_columns.push_back(std::move(column));
  }
  return table;
}

void write_profile(const std::string& path, const qtl::LodProfile& profile) {
  auto out = open_out(path);
  out << "marker,position_cM,lod\n";
  const int count = static_cast<int>(profile.markers.size());
  for (const auto& record : profile.markers) {
    out << marker_label(record.marker, count) << ',' << format_double(record.position_cm)
        << ',' << format_double(record.tested ? record.lod : 0.0) << '\n';
  }
}

void write_hits(const std::string& path, const std::vector<qtl::QtlHit>& hits) {
  auto out = open_out(path);
  out << "marker,position_cM,lod\n";
  for (const auto& hit : hits) {
    out << hit.marker + 1 << ',' << format_double(hit.position_cm) << ','
        << format_double(hit.lod) << '\n';
  }
}

void write_history(const std::string& path, const std::vector<ga::GenerationStat>& history) {
  auto out = open_out(path);
  out << "generation,best_fitness,mean_fitness\n";
  for (const auto& stat : history) {
    out << stat.generation << ',' << format_double(stat.best) << ','
        << format_double(stat.mean) << '\n';
  }
}

void write_ideotype(const std::string& path, const ga::IdeotypeReport& report) {
  auto out = open_out(path);
  out << "parameter,reference,range,optimal,boundary_flag\n";
  for (const auto& row : report.rows) {
    out << row.name << ',' << format_double(row.reference) << ','
        << format_double(row.lower) << ".." << format_double(row.upper) << ','
        << format_double(row.optimal) << ',' << row.boundary << '\n';
  }
  out << "cob_weight," << format_double(report.reference_weight) << ",-,"
      << format_double(report.optimized_weight) << ",\n";
}

void write_surface(const std::string& path, const growth::SurfaceScan& scan,
                   const std::string& x_name, const std::string& y_name) {
  auto out = open_out(path);
  out << x_name << ',' << y_name << ",cob_weight\n";
  for (Eigen::Index i = 0; i < scan.x_values.size(); ++i) {
    for (Eigen::Index j = 0; j < scan.y_values.size(); ++j) {
      out << format_double(scan.x_values(i)) << ',' << format_double(scan.y_values(j))
          << ',' << format_double(scan.cob_weight(i, j)) << '\n';
    }
  }
}

}  // namespace vplant::csv

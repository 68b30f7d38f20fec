#include "qskyrm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qskyrm/density_matrix.hpp"
#include "qskyrm/version.hpp"

namespace qskyrm {

namespace {

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open for reading: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json load_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("invalid JSON in " + path.string() + ": " +
                                e.what());
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

void write_manifest_sidecar(const std::filesystem::path& path,
                            const RunManifest* manifest) {
  if (manifest == nullptr) return;
  write_json(path.string() + ".manifest.json", manifest_json(*manifest));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric field '" + text + "' in " +
                                context);
  }
}

}  // namespace

nlohmann::json manifest_json(const RunManifest& manifest) {
  nlohmann::json doc{{"tool", kToolName},
                     {"tool_version", kToolVersion},
                     {"command", manifest.command},
                     {"inputs", manifest.inputs},
                     {"parameters", manifest.parameters}};
  if (manifest.has_seed) doc["seed"] = manifest.seed;
  return doc;
}

nlohmann::json spec_json(const HybridStateSpec& spec) {
  return {{"ell1", spec.ell1},
          {"ell2", spec.ell2},
          {"alpha", spec.alpha},
          {"gamma", spec.gamma},
          {"w0", spec.w0}};
}

HybridStateSpec spec_from_json(const nlohmann::json& doc) {
  HybridStateSpec spec;
  try {
    spec.ell1 = doc.at("ell1").get<int>();
    spec.ell2 = doc.at("ell2").get<int>();
    spec.alpha = doc.at("alpha").get<double>();
    spec.gamma = doc.at("gamma").get<double>();
    spec.w0 = doc.at("w0").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad state spec document: ") +
                                e.what());
  }
  validate_spec(spec);
  return spec;
}

void write_state_spec(const std::filesystem::path& path,
                      const HybridStateSpec& spec,
                      const RunManifest* manifest) {
  validate_spec(spec);
  nlohmann::json doc = spec_json(spec);
  if (manifest != nullptr) doc["manifest"] = manifest_json(*manifest);
  write_json(path, doc);
}

HybridStateSpec read_state_spec(const std::filesystem::path& path) {
  return spec_from_json(load_json(path));
}

void write_density_matrix(const std::filesystem::path& path,
                          const Eigen::Matrix4cd& rho,
                          const RunManifest* manifest,
                          const nlohmann::json* fit) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back({{"re", rho(i, j).real()}, {"im", rho(i, j).imag()}});
    }
    rows.push_back(row);
  }
  nlohmann::json doc{{"basis", kBasisLabels}, {"rho", rows}};
  if (fit != nullptr) doc["fit"] = *fit;
  if (manifest != nullptr) doc["manifest"] = manifest_json(*manifest);
  write_json(path, doc);
}

Eigen::Matrix4cd read_density_matrix(const std::filesystem::path& path) {
  const nlohmann::json doc = load_json(path);
  Eigen::Matrix4cd rho;
  try {
    const auto& basis = doc.at("basis");
    for (int i = 0; i < 4; ++i) {
      if (basis.at(i).get<std::string>() != kBasisLabels[i]) {
        throw std::invalid_argument("unexpected basis order in " +
                                    path.string());
      }
    }
    const auto& rows = doc.at("rho");
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const auto& cell = rows.at(i).at(j);
        rho(i, j) = {cell.at("re").get<double>(), cell.at("im").get<double>()};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad density-matrix document " +
                                path.string() + ": " + e.what());
  }
  validate_density_matrix(rho);
  return rho;
}

void write_counts_csv(const std::filesystem::path& path,
                      const std::vector<MeasurementRecord>& records,
                      const RunManifest* manifest) {
  std::ostringstream out;
  out << "setting_a,setting_b,probability,counts\n";
  for (const MeasurementRecord& record : records) {
    out << to_string(record.setting.a) << ',' << to_string(record.setting.b)
        << ',' << fmt(record.probability) << ',';
    if (record.counts >= 0) out << record.counts;
    out << '\n';
  }
  write_text(path, out.str());
  write_manifest_sidecar(path, manifest);
}

std::vector<MeasurementRecord> read_counts_csv(
    const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) ||
      line != "setting_a,setting_b,probability,counts") {
    throw std::invalid_argument("bad counts CSV header in " + path.string());
  }
  std::vector<MeasurementRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 4) {
      throw std::invalid_argument("expected 4 fields per counts row in " +
                                  path.string());
    }
    MeasurementRecord record;
    record.setting.a = parse_spatial_setting(fields[0]);
    record.setting.b = parse_pol_setting(fields[1]);
    record.probability = parse_double(fields[2], path.string());
    record.counts =
        fields[3].empty()
            ? -1
            : static_cast<long>(parse_double(fields[3], path.string()));
    records.push_back(record);
  }
  return records;
}

void write_stokes_csv(const std::filesystem::path& path,
                      const StokesField& field, const HybridStateSpec& spec,
                      bool qwp, const RunManifest* manifest) {
  std::ostringstream out;
  out << "x,y,s0,s1,s2,s3,valid\n";
  const int n = field.grid.samples_per_axis;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const long i = field.index(ix, iy);
      out << fmt(field.x(ix)) << ',' << fmt(field.y(iy)) << ','
          << fmt(field.s0[i]) << ',' << fmt(field.s1[i]) << ','
          << fmt(field.s2[i]) << ',' << fmt(field.s3[i]) << ','
          << int(field.valid[i]) << '\n';
    }
  }
  write_text(path, out.str());

  const nlohmann::json meta{{"grid",
                             {{"half_width", field.grid.half_width},
                              {"samples_per_axis", field.grid.samples_per_axis}}},
                            {"spec", spec_json(spec)},
                            {"normalized", field.normalized},
                            {"qwp", qwp}};
  write_json(path.string() + ".meta.json", meta);
  write_manifest_sidecar(path, manifest);
}

StoredStokesField read_stokes_csv(const std::filesystem::path& path) {
  const nlohmann::json meta = load_json(path.string() + ".meta.json");
  StoredStokesField stored;
  try {
    stored.field.grid.half_width = meta.at("grid").at("half_width").get<double>();
    stored.field.grid.samples_per_axis =
        meta.at("grid").at("samples_per_axis").get<int>();
    stored.spec = spec_from_json(meta.at("spec"));
    stored.field.normalized = meta.at("normalized").get<bool>();
    stored.qwp = meta.at("qwp").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad Stokes metadata for " + path.string() +
                                ": " + e.what());
  }
  validate_grid(stored.field.grid);

  const long total = stored.field.grid.size();
  stored.field.s0.reserve(total);
  stored.field.s1.reserve(total);
  stored.field.s2.reserve(total);
  stored.field.s3.reserve(total);
  stored.field.valid.reserve(total);

  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "x,y,s0,s1,s2,s3,valid") {
    throw std::invalid_argument("bad Stokes CSV header in " + path.string());
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::invalid_argument("expected 7 fields per Stokes row in " +
                                  path.string());
    }
    stored.field.s0.push_back(parse_double(fields[2], path.string()));
    stored.field.s1.push_back(parse_double(fields[3], path.string()));
    stored.field.s2.push_back(parse_double(fields[4], path.string()));
    stored.field.s3.push_back(parse_double(fields[5], path.string()));
    stored.field.valid.push_back(fields[6] == "1" ? 1 : 0);
  }
  if (static_cast<long>(stored.field.s0.size()) != total) {
    throw std::invalid_argument("Stokes CSV row count does not match its grid");
  }
  return stored;
}

void write_topology_report(const std::filesystem::path& path,
                           const TopologyReport& report,
                           const RunManifest* manifest) {
  nlohmann::json doc{{"n_numeric", report.n_numeric},
                     {"n_closed_form", report.n_closed_form},
                     {"n_theory", report.n_theory},
                     {"coverage_total", report.coverage_total},
                     {"coverage_per_segment", report.coverage_per_segment},
                     {"cells_used", report.cells_used}};
  if (manifest != nullptr) doc["manifest"] = manifest_json(*manifest);
  write_json(path, doc);
}

void write_metric_report(const std::filesystem::path& path,
                         const MetricReport& report,
                         const RunManifest* manifest) {
  nlohmann::json doc{{"fidelity", report.fidelity},
                     {"concurrence", report.concurrence},
                     {"purity", report.purity}};
  if (manifest != nullptr) doc["manifest"] = manifest_json(*manifest);
  write_json(path, doc);
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<DecaySweepRow>& rows,
                     const RunManifest* manifest) {
  std::ostringstream out;
  out << "alpha,fidelity,concurrence,n_numeric,n_closed_form,half_width\n";
  for (const DecaySweepRow& row : rows) {
    out << fmt(row.alpha) << ',' << fmt(row.fidelity) << ','
        << fmt(row.concurrence) << ',' << fmt(row.n_numeric) << ','
        << fmt(row.n_closed_form) << ',' << fmt(row.half_width) << '\n';
  }
  write_text(path, out.str());
  write_manifest_sidecar(path, manifest);
}

void write_stereographic_csv(const std::filesystem::path& path,
                             const StokesField& field,
                             const RunManifest* manifest) {
  std::ostringstream out;
  out << "x,y,z,s1,s2,s3,s0\n";
  const int n = field.grid.samples_per_axis;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const long i = field.index(ix, iy);
      if (!field.valid[i]) continue;
      const std::array<double, 3> p = stereographic(field.x(ix), field.y(iy));
      out << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
          << fmt(field.s1[i]) << ',' << fmt(field.s2[i]) << ','
          << fmt(field.s3[i]) << ',' << fmt(field.s0[i]) << '\n';
    }
  }
  write_text(path, out.str());
  write_manifest_sidecar(path, manifest);
}

}  // namespace qskyrm

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qskyrm/decay_sweep.hpp"
#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/measurement.hpp"
#include "qskyrm/metrics.hpp"
#include "qskyrm/stokes_field.hpp"
#include "qskyrm/topology.hpp"

namespace qskyrm {

// Provenance block attached to every output: embedded under "manifest" in
// JSON documents, written to "<file>.manifest.json" next to CSVs.  Contains
// no timestamps, so identical invocations produce identical bytes.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json parameters = nlohmann::json::object();
  bool has_seed = false;
  std::uint64_t seed = 0;
};

nlohmann::json manifest_json(const RunManifest& manifest);

// --- flat state-spec document: {"ell1","ell2","alpha","gamma","w0"} ---
void write_state_spec(const std::filesystem::path& path,
                      const HybridStateSpec& spec,
                      const RunManifest* manifest = nullptr);
HybridStateSpec read_state_spec(const std::filesystem::path& path);
nlohmann::json spec_json(const HybridStateSpec& spec);
HybridStateSpec spec_from_json(const nlohmann::json& doc);

// --- density matrix: basis labels + 4x4 of {re, im}, row-major ---
void write_density_matrix(const std::filesystem::path& path,
                          const Eigen::Matrix4cd& rho,
                          const RunManifest* manifest = nullptr,
                          const nlohmann::json* fit = nullptr);
Eigen::Matrix4cd read_density_matrix(const std::filesystem::path& path);

// --- coincidence records: header setting_a,setting_b,probability,counts;
//     counts column empty when not simulated ---
void write_counts_csv(const std::filesystem::path& path,
                      const std::vector<MeasurementRecord>& records,
                      const RunManifest* manifest = nullptr);
std::vector<MeasurementRecord> read_counts_csv(const std::filesystem::path& path);

// --- Stokes field: header x,y,s0,s1,s2,s3,valid (iy outer, ix inner), plus
//     a "<file>.meta.json" sidecar carrying grid, state spec and flags ---
struct StoredStokesField {
  StokesField field;
  HybridStateSpec spec;
  bool qwp = false;
};
void write_stokes_csv(const std::filesystem::path& path,
                      const StokesField& field, const HybridStateSpec& spec,
                      bool qwp, const RunManifest* manifest = nullptr);
StoredStokesField read_stokes_csv(const std::filesystem::path& path);

void write_topology_report(const std::filesystem::path& path,
                           const TopologyReport& report,
                           const RunManifest* manifest = nullptr);

void write_metric_report(const std::filesystem::path& path,
                         const MetricReport& report,
                         const RunManifest* manifest = nullptr);

// --- decay sweep: alpha,fidelity,concurrence,n_numeric,n_closed_form,half_width ---
void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<DecaySweepRow>& rows,
                     const RunManifest* manifest = nullptr);

// --- stereographic projection of valid samples: x,y,z,s1,s2,s3,s0 ---
void write_stereographic_csv(const std::filesystem::path& path,
                             const StokesField& field,
                             const RunManifest* manifest = nullptr);

}  // namespace qskyrm

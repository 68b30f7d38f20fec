#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/io.hpp"
#include "qskyrm/measurement.hpp"
#include "qskyrm/rng.hpp"
#include "qskyrm/stokes_field.hpp"
#include "qskyrm/topology.hpp"

#include "test_support.hpp"

using namespace qskyrm;
using test_support::bell_spec;
using test_support::make_spec;
using test_support::TempDir;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

RunManifest sample_manifest() {
  RunManifest manifest;
  manifest.command = "qskyrm generate --ell1 1 --ell2 0";
  manifest.inputs = {"spec.json"};
  manifest.parameters = {{"alpha", 0.8}};
  manifest.has_seed = true;
  manifest.seed = 77;
  return manifest;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("state spec documents round-trip exactly") {
  TempDir dir("spec");
  const HybridStateSpec spec = make_spec(-2, 3, 0.83719, 1.234567891234567, 0.9);
  write_state_spec(dir.file("spec.json"), spec);
  const HybridStateSpec loaded = read_state_spec(dir.file("spec.json"));
  CHECK(loaded.ell1 == spec.ell1);
  CHECK(loaded.ell2 == spec.ell2);
  CHECK(loaded.alpha == spec.alpha);
  CHECK(loaded.gamma == spec.gamma);
  CHECK(loaded.w0 == spec.w0);
}

TEST_CASE("density matrices round-trip exactly") {
  TempDir dir("rho");
  SplitMix64 gen(101);
  const Eigen::Matrix4cd rho = test_support::random_mixed(gen);
  write_density_matrix(dir.file("rho.json"), rho);
  const Eigen::Matrix4cd loaded = read_density_matrix(dir.file("rho.json"));
  CHECK((loaded - rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("corrupted density-matrix documents are rejected") {
  TempDir dir("badrho");
  write_density_matrix(dir.file("rho.json"),
                       build_pure_state(bell_spec()));
  nlohmann::json doc = nlohmann::json::parse(slurp(dir.file("rho.json")));

  nlohmann::json unphysical = doc;
  unphysical["rho"][0][0]["re"] = 5.0;
  {
    std::ofstream out(dir.file("unphysical.json"));
    out << unphysical.dump(2);
  }
  CHECK_THROWS_AS(read_density_matrix(dir.file("unphysical.json")),
                  std::invalid_argument);

  nlohmann::json reordered = doc;
  std::swap(reordered["basis"][0], reordered["basis"][3]);
  {
    std::ofstream out(dir.file("reordered.json"));
    out << reordered.dump(2);
  }
  CHECK_THROWS_AS(read_density_matrix(dir.file("reordered.json")),
                  std::invalid_argument);

  {
    std::ofstream out(dir.file("mangled.json"));
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_density_matrix(dir.file("mangled.json")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_density_matrix(dir.file("absent.json")),
                  std::invalid_argument);
}

TEST_CASE("counts tables round-trip probabilities and counts") {
  TempDir dir("counts");
  auto records = born_probabilities(build_pure_state(bell_spec()));
  SUBCASE("exact probabilities leave the counts column empty") {
    write_counts_csv(dir.file("counts.csv"), records);
    const auto lines = lines_of(slurp(dir.file("counts.csv")));
    REQUIRE(lines.size() == 37);
    CHECK(lines[0] == "setting_a,setting_b,probability,counts");
    CHECK(lines[1].back() == ',');
    const auto loaded = read_counts_csv(dir.file("counts.csv"));
    REQUIRE(loaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(loaded[i].setting.a == records[i].setting.a);
      CHECK(loaded[i].setting.b == records[i].setting.b);
      CHECK(loaded[i].probability == records[i].probability);
      CHECK(loaded[i].counts == -1);
    }
  }
  SUBCASE("simulated counts survive the trip") {
    simulate_counts(records, 12000, 9);
    write_counts_csv(dir.file("counts.csv"), records);
    const auto loaded = read_counts_csv(dir.file("counts.csv"));
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(loaded[i].probability == records[i].probability);
      CHECK(loaded[i].counts == records[i].counts);
    }
  }
}

TEST_CASE("Stokes tables carry the grid, the state and the flags") {
  TempDir dir("stokes");
  const HybridStateSpec spec = make_spec(1, 0, 0.8, 0.3);
  const Grid2D grid{3.0, 33};
  const StokesField field = stokes_field(build_pure_state(spec), spec, grid,
                                         {.qwp = true, .normalized = true});
  write_stokes_csv(dir.file("field.csv"), field, spec, true);
  CHECK(std::filesystem::exists(dir.file("field.csv.meta.json")));

  const StoredStokesField loaded = read_stokes_csv(dir.file("field.csv"));
  CHECK(loaded.spec.ell1 == spec.ell1);
  CHECK(loaded.spec.ell2 == spec.ell2);
  CHECK(loaded.spec.alpha == spec.alpha);
  CHECK(loaded.qwp);
  CHECK(loaded.field.normalized);
  CHECK(loaded.field.grid.half_width == grid.half_width);
  CHECK(loaded.field.grid.samples_per_axis == grid.samples_per_axis);
  for (long i = 0; i < grid.size(); ++i) {
    CHECK(loaded.field.valid[i] == field.valid[i]);
    CHECK(loaded.field.s0[i] == field.s0[i]);
    CHECK(loaded.field.s1[i] == field.s1[i]);
    CHECK(loaded.field.s2[i] == field.s2[i]);
    CHECK(loaded.field.s3[i] == field.s3[i]);
  }

  const auto lines = lines_of(slurp(dir.file("field.csv")));
  CHECK(lines[0] == "x,y,s0,s1,s2,s3,valid");
  CHECK(lines.size() == 1 + static_cast<std::size_t>(grid.size()));
}

TEST_CASE("report documents carry their fields") {
  TempDir dir("reports");
  TopologyReport topo;
  topo.n_numeric = 0.9936;
  topo.n_closed_form = 1.0;
  topo.n_theory = 1.0;
  topo.coverage_total = 0.993;
  topo.coverage_per_segment = {0.993};
  topo.cells_used = 2000;
  write_topology_report(dir.file("topology.json"), topo);
  const nlohmann::json tdoc =
      nlohmann::json::parse(slurp(dir.file("topology.json")));
  CHECK(tdoc.at("n_numeric").get<double>() == 0.9936);
  CHECK(tdoc.at("n_closed_form").get<double>() == 1.0);
  CHECK(tdoc.at("n_theory").get<double>() == 1.0);
  CHECK(tdoc.at("coverage_total").get<double>() == 0.993);
  CHECK(tdoc.at("coverage_per_segment").size() == 1);
  CHECK(tdoc.at("cells_used").get<long>() == 2000);

  MetricReport metric;
  metric.fidelity = 0.998;
  metric.concurrence = 0.97;
  metric.purity = 0.99;
  write_metric_report(dir.file("metrics.json"), metric);
  const nlohmann::json mdoc =
      nlohmann::json::parse(slurp(dir.file("metrics.json")));
  CHECK(mdoc.at("fidelity").get<double>() == 0.998);
  CHECK(mdoc.at("concurrence").get<double>() == 0.97);
  CHECK(mdoc.at("purity").get<double>() == 0.99);
}

TEST_CASE("sweep tables use the fixed column order") {
  TempDir dir("sweep");
  std::vector<DecaySweepRow> rows(2);
  rows[0] = {0.7071067811865476, 1.0, 1.0, 0.9968, 1.0, 11.3137};
  rows[1] = {1.0, 0.5, 0.0, 0.0, 0.0, 8.0};
  write_sweep_csv(dir.file("sweep.csv"), rows, nullptr);
  const auto lines = lines_of(slurp(dir.file("sweep.csv")));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "alpha,fidelity,concurrence,n_numeric,n_closed_form,half_width");
  CHECK(lines[2] == "1,0.5,0,0,0,8");
}

TEST_CASE("sphere projections list one row per valid sample") {
  TempDir dir("stereo");
  const HybridStateSpec spec = make_spec(0, 3, 0.8);
  const StokesField field = stokes_field(build_pure_state(spec), spec,
                                         {4.0, 33}, {.normalized = true});
  write_stereographic_csv(dir.file("sphere.csv"), field);
  const auto lines = lines_of(slurp(dir.file("sphere.csv")));
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "x,y,z,s1,s2,s3,s0");
  long valid = 0;
  for (unsigned char v : field.valid) valid += v;
  CHECK(lines.size() == 1 + static_cast<std::size_t>(valid));

  bool saw_south_pole = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    REQUIRE(values.size() == 7);
    CHECK(std::abs(std::hypot(values[0], values[1], values[2]) - 1.0) <= 1e-9);
    if (values[2] == -1.0) saw_south_pole = true;
  }
  CHECK(saw_south_pole);
}

TEST_CASE("manifests record the invocation and stay byte-stable") {
  TempDir dir("manifest");
  const RunManifest manifest = sample_manifest();
  const HybridStateSpec spec = bell_spec();
  write_state_spec(dir.file("spec.json"), spec, &manifest);
  const nlohmann::json doc =
      nlohmann::json::parse(slurp(dir.file("spec.json")));
  REQUIRE(doc.contains("manifest"));
  CHECK(doc["manifest"].at("tool").get<std::string>() == "qskyrm");
  CHECK(doc["manifest"].at("command").get<std::string>() == manifest.command);
  CHECK(doc["manifest"].at("seed").get<std::uint64_t>() == 77);
  CHECK(doc["manifest"].at("parameters").at("alpha").get<double>() == 0.8);

  auto records = born_probabilities(build_pure_state(spec));
  write_counts_csv(dir.file("counts.csv"), records, &manifest);
  REQUIRE(std::filesystem::exists(dir.file("counts.csv.manifest.json")));
  const std::string first = slurp(dir.file("counts.csv.manifest.json"));
  write_counts_csv(dir.file("counts.csv"), records, &manifest);
  CHECK(slurp(dir.file("counts.csv.manifest.json")) == first);

  RunManifest unseeded = manifest;
  unseeded.has_seed = false;
  write_state_spec(dir.file("unseeded.json"), spec, &unseeded);
  const nlohmann::json udoc =
      nlohmann::json::parse(slurp(dir.file("unseeded.json")));
  CHECK(!udoc["manifest"].contains("seed"));
}

TEST_CASE("malformed tables are rejected") {
  TempDir dir("badcsv");
  {
    std::ofstream out(dir.file("counts.csv"));
    out << "wrong,header,line,here\n";
  }
  CHECK_THROWS_AS(read_counts_csv(dir.file("counts.csv")),
                  std::invalid_argument);
  {
    std::ofstream out(dir.file("short.csv"));
    out << "setting_a,setting_b,probability,counts\nL1,H,0.5\n";
  }
  CHECK_THROWS_AS(read_counts_csv(dir.file("short.csv")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_stokes_csv(dir.file("missing.csv")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_state_spec(dir.file("missing.json")),
                  std::invalid_argument);
}

}  // TEST_SUITE

// qskyrm: build, simulate, reconstruct and analyse non-local Stokes textures
// of two-photon hybrid entangled states.  Every command reads/writes files
// only; identical invocations produce byte-identical outputs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qskyrm/decay_sweep.hpp"
#include "qskyrm/density_matrix.hpp"
#include "qskyrm/io.hpp"
#include "qskyrm/measurement.hpp"
#include "qskyrm/metrics.hpp"
#include "qskyrm/stokes_field.hpp"
#include "qskyrm/tomography.hpp"
#include "qskyrm/topology.hpp"
#include "qskyrm/version.hpp"

namespace {

using qskyrm::Grid2D;
using qskyrm::HybridStateSpec;
using qskyrm::RunManifest;

struct GenerateArgs {
  int ell1 = 1;
  int ell2 = 0;
  double alpha = qskyrm::kAlphaMin;
  double grating_m = -1.0;
  double gamma = 0.0;
  double w0 = 1.0;
  std::string out_spec;
  std::string out_rho;
};

struct SimulateArgs {
  std::string spec_path;
  std::string rho_path;
  long shots = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

struct ReconstructArgs {
  std::string counts_path;
  std::string out;
  bool no_project = false;
  double ridge = 1e-10;
};

struct StokesArgs {
  std::string spec_path;
  std::string rho_path;
  double half_width = 8.0;
  int grid_n = 257;
  bool auto_grid = false;
  bool qwp = false;
  bool normalize = false;
  std::string out;
};

struct SkyrmeArgs {
  std::string field_path;
  std::string out;
  int cells = 2000;
  int segments = 0;
};

struct MetricsArgs {
  std::string target_path;
  std::string measured_path;
  std::string out;
};

struct SweepArgs {
  std::string spec_path;
  std::string out;
  std::vector<double> alphas;
  long shots = 0;
  std::uint64_t seed = 0;
  double half_width = 8.0;
  int grid_n = 257;
};

struct ProjectArgs {
  std::string field_path;
  std::string out;
};

Eigen::Matrix4cd state_matrix(const HybridStateSpec& spec,
                              const std::string& rho_path) {
  if (rho_path.empty()) return qskyrm::build_pure_state(spec);
  return qskyrm::read_density_matrix(rho_path);
}

int run(int argc, char** argv) {
  CLI::App app{"Non-local skyrmionic textures of polarization-OAM hybrid "
               "two-photon states: state files, simulated coincidence "
               "tomography, reconstruction, Stokes fields, topology and "
               "decay sweeps."};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(qskyrm::kToolName) + " " +
                           qskyrm::kToolVersion);
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker thread cap (<= 0: all hardware threads)")
      ->envname("QSKYRM_THREADS");

  GenerateArgs gen;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "build a state spec and density matrix");
  cmd_generate->add_option("--ell1,--l1", gen.ell1, "OAM index of the H arm")
      ->required();
  cmd_generate->add_option("--ell2,--l2", gen.ell2, "OAM index of the V arm")
      ->required();
  CLI::Option* opt_alpha = cmd_generate->add_option(
      "--alpha", gen.alpha, "H-arm amplitude in [1/sqrt(2), 1]");
  cmd_generate
      ->add_option("--grating-m", gen.grating_m,
                   "derive alpha from a fork-grating modulation depth in "
                   "[0, 1] (amplitude = sqrt of the dominant-arm weight)")
      ->excludes(opt_alpha);
  cmd_generate->add_option("--gamma", gen.gamma, "relative phase of the V arm");
  cmd_generate->add_option("--w0", gen.w0, "beam waist");
  cmd_generate->add_option("--out", gen.out_spec, "state spec JSON path")
      ->required();
  cmd_generate->add_option("--rho", gen.out_rho,
                           "also write the pure density matrix here");

  SimulateArgs sim;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate-qst", "coincidence probabilities/counts for the 36 settings");
  CLI::Option* opt_sim_spec =
      cmd_simulate->add_option("--spec", sim.spec_path, "state spec JSON");
  cmd_simulate
      ->add_option("--rho", sim.rho_path,
                   "density matrix JSON (defaults to the spec's pure state)")
      ->needs(opt_sim_spec);
  opt_sim_spec->required();
  cmd_simulate->add_option("--shots", sim.shots,
                           "shots per setting (0: exact probabilities)");
  cmd_simulate->add_option("--seed", sim.seed, "shot-noise seed");
  cmd_simulate->add_option("--out", sim.out, "counts CSV path")->required();

  ReconstructArgs rec;
  CLI::App* cmd_reconstruct = app.add_subcommand(
      "reconstruct", "least-squares density matrix from a counts CSV");
  cmd_reconstruct->add_option("--counts", rec.counts_path, "counts CSV")
      ->required();
  cmd_reconstruct->add_option("--out", rec.out, "density matrix JSON path")
      ->required();
  cmd_reconstruct->add_flag("--no-project", rec.no_project,
                            "skip the physicality projection");
  cmd_reconstruct->add_option("--ridge", rec.ridge,
                              "Tikhonov ridge for the normal equations");

  StokesArgs stk;
  CLI::App* cmd_stokes =
      app.add_subcommand("stokes", "conditional Stokes field on a grid");
  cmd_stokes->add_option("--spec", stk.spec_path, "state spec JSON")
      ->required();
  cmd_stokes->add_option("--rho", stk.rho_path,
                         "density matrix JSON (defaults to the pure state)");
  cmd_stokes->add_option("--half-width", stk.half_width,
                         "grid half-width in units of w0");
  cmd_stokes->add_option("--grid-n", stk.grid_n, "odd samples per axis");
  cmd_stokes->add_flag("--auto-grid", stk.auto_grid,
                       "rescale the grid to the state's crossover radius");
  cmd_stokes->add_flag("--qwp", stk.qwp, "apply the quarter-wave plate");
  cmd_stokes->add_flag("--normalize", stk.normalize,
                       "store locally normalised (s1,s2,s3)");
  cmd_stokes->add_option("--out", stk.out, "Stokes CSV path")->required();

  SkyrmeArgs sky;
  CLI::App* cmd_skyrme = app.add_subcommand(
      "skyrme", "skyrme number and sphere coverage of a Stokes field");
  cmd_skyrme->add_option("--field", sky.field_path, "Stokes CSV")->required();
  cmd_skyrme->add_option("--out", sky.out, "topology report JSON path")
      ->required();
  cmd_skyrme->add_option("--cells", sky.cells, "sphere cells for coverage");
  cmd_skyrme->add_option("--segments", sky.segments,
                         "azimuthal sectors (0: one per expected wrap)");

  MetricsArgs met;
  CLI::App* cmd_metrics = app.add_subcommand(
      "metrics", "fidelity/concurrence/purity of a measured state");
  cmd_metrics->add_option("--target", met.target_path, "target density matrix")
      ->required();
  cmd_metrics
      ->add_option("--measured", met.measured_path, "measured density matrix")
      ->required();
  cmd_metrics->add_option("--out", met.out, "metric report JSON path")
      ->required();

  SweepArgs swp;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep-decay", "resilience sweep over the decay amplitude");
  cmd_sweep->add_option("--spec", swp.spec_path, "state spec JSON")->required();
  cmd_sweep->add_option("--out", swp.out, "sweep CSV path")->required();
  cmd_sweep
      ->add_option("--alphas", swp.alphas,
                   "alpha values (default: coarse ladder + geometric tail)")
      ->delimiter(',');
  cmd_sweep->add_option("--shots,--noise-shots", swp.shots,
                        "simulate tomography with this many shots per row");
  cmd_sweep->add_option("--seed", swp.seed, "master seed for per-row streams");
  cmd_sweep->add_option("--half-width", swp.half_width, "base grid half-width");
  cmd_sweep->add_option("--grid-n", swp.grid_n, "base odd samples per axis");

  ProjectArgs prj;
  CLI::App* cmd_project = app.add_subcommand(
      "project", "stereographic projection of a Stokes field");
  cmd_project->add_option("--field", prj.field_path, "Stokes CSV")->required();
  cmd_project->add_option("--out", prj.out, "projected CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(cmd_generate)) {
    HybridStateSpec spec;
    spec.ell1 = gen.ell1;
    spec.ell2 = gen.ell2;
    spec.alpha = gen.grating_m >= 0.0 ? qskyrm::grating_amplitude(gen.grating_m)
                                      : gen.alpha;
    spec.gamma = gen.gamma;
    spec.w0 = gen.w0;
    qskyrm::validate_spec(spec);

    RunManifest manifest;
    manifest.command = "generate";
    manifest.parameters = qskyrm::spec_json(spec);
    if (gen.grating_m >= 0.0) manifest.parameters["grating_m"] = gen.grating_m;
    qskyrm::write_state_spec(gen.out_spec, spec, &manifest);
    if (!gen.out_rho.empty()) {
      qskyrm::write_density_matrix(gen.out_rho,
                                   qskyrm::build_pure_state(spec), &manifest);
    }
    return 0;
  }

  if (app.got_subcommand(cmd_simulate)) {
    const HybridStateSpec spec = qskyrm::read_state_spec(sim.spec_path);
    const Eigen::Matrix4cd rho = state_matrix(spec, sim.rho_path);
    std::vector<qskyrm::MeasurementRecord> records =
        qskyrm::born_probabilities(rho);
    if (sim.shots > 0) {
      qskyrm::simulate_counts(records, sim.shots, sim.seed);
    } else if (sim.shots < 0) {
      throw std::invalid_argument("shots must be >= 0");
    }

    RunManifest manifest;
    manifest.command = "simulate-qst";
    manifest.inputs = {sim.spec_path};
    if (!sim.rho_path.empty()) manifest.inputs.push_back(sim.rho_path);
    manifest.parameters["shots"] = sim.shots;
    if (sim.shots > 0) {
      manifest.has_seed = true;
      manifest.seed = sim.seed;
    }
    qskyrm::write_counts_csv(sim.out, records, &manifest);
    return 0;
  }

  if (app.got_subcommand(cmd_reconstruct)) {
    const std::vector<qskyrm::MeasurementRecord> records =
        qskyrm::read_counts_csv(rec.counts_path);
    qskyrm::ReconstructOptions options;
    options.project = !rec.no_project;
    options.ridge = rec.ridge;
    const qskyrm::TomographyResult result =
        qskyrm::reconstruct(records, options);

    RunManifest manifest;
    manifest.command = "reconstruct";
    manifest.inputs = {rec.counts_path};
    manifest.parameters["project"] = options.project;
    manifest.parameters["ridge"] = options.ridge;
    const nlohmann::json fit{{"residual", result.residual},
                             {"iterations", result.iterations},
                             {"projected", options.project}};
    qskyrm::write_density_matrix(rec.out, result.rho, &manifest, &fit);
    return 0;
  }

  if (app.got_subcommand(cmd_stokes)) {
    const HybridStateSpec spec = qskyrm::read_state_spec(stk.spec_path);
    const Eigen::Matrix4cd rho = state_matrix(spec, stk.rho_path);
    Grid2D grid{stk.half_width, stk.grid_n};
    if (stk.auto_grid) grid = qskyrm::scaled_grid_for(spec, grid);
    const qskyrm::StokesField field = qskyrm::stokes_field(
        rho, spec, grid, {stk.qwp, threads, stk.normalize});

    RunManifest manifest;
    manifest.command = "stokes";
    manifest.inputs = {stk.spec_path};
    if (!stk.rho_path.empty()) manifest.inputs.push_back(stk.rho_path);
    manifest.parameters = {{"half_width", grid.half_width},
                           {"samples_per_axis", grid.samples_per_axis},
                           {"auto_grid", stk.auto_grid},
                           {"qwp", stk.qwp},
                           {"normalize", stk.normalize}};
    qskyrm::write_stokes_csv(stk.out, field, spec, stk.qwp, &manifest);
    return 0;
  }

  if (app.got_subcommand(cmd_skyrme)) {
    qskyrm::StoredStokesField stored = qskyrm::read_stokes_csv(sky.field_path);
    if (!stored.field.normalized) qskyrm::normalize_local(stored.field);
    const qskyrm::TopologyReport report = qskyrm::topology_report(
        stored.field, stored.spec, sky.cells, sky.segments);

    RunManifest manifest;
    manifest.command = "skyrme";
    manifest.inputs = {sky.field_path};
    manifest.parameters = {{"cells", sky.cells}, {"segments", sky.segments}};
    qskyrm::write_topology_report(sky.out, report, &manifest);
    return 0;
  }

  if (app.got_subcommand(cmd_metrics)) {
    const Eigen::Matrix4cd target =
        qskyrm::read_density_matrix(met.target_path);
    const Eigen::Matrix4cd measured =
        qskyrm::read_density_matrix(met.measured_path);
    const qskyrm::MetricReport report =
        qskyrm::metrics_report(target, measured);

    RunManifest manifest;
    manifest.command = "metrics";
    manifest.inputs = {met.target_path, met.measured_path};
    qskyrm::write_metric_report(met.out, report, &manifest);
    return 0;
  }

  if (app.got_subcommand(cmd_sweep)) {
    const HybridStateSpec spec = qskyrm::read_state_spec(swp.spec_path);
    const std::vector<double> alphas =
        swp.alphas.empty() ? qskyrm::default_decay_alphas() : swp.alphas;
    qskyrm::SweepOptions options;
    options.shots = swp.shots;
    options.seed = swp.seed;
    options.threads = threads;
    const std::vector<qskyrm::DecaySweepRow> rows = qskyrm::run_decay_sweep(
        spec, alphas, Grid2D{swp.half_width, swp.grid_n}, options);

    RunManifest manifest;
    manifest.command = "sweep-decay";
    manifest.inputs = {swp.spec_path};
    manifest.parameters = {{"alphas", alphas},
                           {"shots", swp.shots},
                           {"half_width", swp.half_width},
                           {"samples_per_axis", swp.grid_n}};
    if (swp.shots > 0) {
      manifest.has_seed = true;
      manifest.seed = swp.seed;
    }
    qskyrm::write_sweep_csv(swp.out, rows, &manifest);
    return 0;
  }

  if (app.got_subcommand(cmd_project)) {
    const qskyrm::StoredStokesField stored =
        qskyrm::read_stokes_csv(prj.field_path);

    RunManifest manifest;
    manifest.command = "project";
    manifest.inputs = {prj.field_path};
    qskyrm::write_stereographic_csv(prj.out, stored.field, &manifest);
    return 0;
  }

  return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << '\n';
    return 3;
  }
}

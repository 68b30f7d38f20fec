#include "qskyrm/decay_sweep.hpp"

#include <stdexcept>

#include "qskyrm/measurement.hpp"
#include "qskyrm/metrics.hpp"
#include "qskyrm/rng.hpp"
#include "qskyrm/stokes_field.hpp"
#include "qskyrm/topology.hpp"

namespace qskyrm {

std::vector<double> default_decay_alphas() {
  std::vector<double> alphas = {kAlphaMin, 0.75, 0.80, 0.85, 0.90, 0.95};
  double gap = 0.05;
  while (true) {
    gap *= 0.5;
    const double alpha = 1.0 - gap;
    if (alpha > 0.999) break;
    alphas.push_back(alpha);
  }
  alphas.push_back(1.0);
  return alphas;
}

std::vector<DecaySweepRow> run_decay_sweep(const HybridStateSpec& base,
                                           const std::vector<double>& alphas,
                                           const Grid2D& base_grid,
                                           const SweepOptions& options) {
  validate_spec(base);
  validate_grid(base_grid);
  if (alphas.empty()) {
    throw std::invalid_argument("decay sweep needs at least one alpha");
  }

  const Eigen::Matrix4cd reference =
      build_pure_state(apply_decay(base, kAlphaMin));

  std::vector<DecaySweepRow> rows;
  rows.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const HybridStateSpec decayed = apply_decay(base, alphas[i]);
    Eigen::Matrix4cd rho = build_pure_state(decayed);
    if (options.shots > 0) {
      std::vector<MeasurementRecord> records = born_probabilities(rho);
      simulate_counts(records, options.shots,
                      derive_stream_seed(options.seed, i));
      rho = reconstruct(records, options.reconstruct).rho;
    }

    const Grid2D grid = scaled_grid_for(decayed, base_grid);
    const StokesField field = stokes_field(
        rho, decayed, grid, {.threads = options.threads, .normalized = true});

    DecaySweepRow row;
    row.alpha = decayed.alpha;
    row.fidelity = fidelity(reference, rho);
    row.concurrence = concurrence(rho);
    row.n_numeric = skyrme_number(field);
    row.n_closed_form = closed_form_skyrme(decayed);
    row.half_width = grid.half_width;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qskyrm

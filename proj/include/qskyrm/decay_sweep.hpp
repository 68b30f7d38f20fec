#pragma once

#include <cstdint>
#include <vector>

#include "qskyrm/grid.hpp"
#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/tomography.hpp"

namespace qskyrm {

struct DecaySweepRow {
  double alpha = 0.0;
  double fidelity = 0.0;     // against the maximally entangled reference
  double concurrence = 0.0;
  double n_numeric = 0.0;
  double n_closed_form = 0.0;
  double half_width = 0.0;   // auto-scaled grid half-width actually used
};

struct SweepOptions {
  long shots = 0;        // > 0: simulate tomography per row and reconstruct
  std::uint64_t seed = 0;
  int threads = 0;
  ReconstructOptions reconstruct;
};

// Default alpha ladder: coarse steps to 0.95, then 1 - alpha halved per step
// down to the 0.999 floor, then the exact product-state endpoint.
std::vector<double> default_decay_alphas();

// One row per alpha: decay the state, optionally push it through the
// simulated-tomography pipeline (per-row seeds split from options.seed), then
// evaluate fidelity/concurrence and the skyrme numbers on the auto-scaled
// grid.  At alpha = 1 the field is uniform, so the quadrature returns an
// exact zero without needing a crossover-scaled window.
std::vector<DecaySweepRow> run_decay_sweep(const HybridStateSpec& base,
                                           const std::vector<double>& alphas,
                                           const Grid2D& base_grid,
                                           const SweepOptions& options = {});

}  // namespace qskyrm

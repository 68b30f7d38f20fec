#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qskyrm/grid.hpp"
#include "qskyrm/hybrid_state.hpp"

namespace qskyrm {

// Quantum Stokes parameters of photon B conditioned on detecting photon A at
// each grid point.  Arrays are row-major with x fastest: index = iy*n + ix,
// x = coord(ix), y = coord(iy).  valid marks points whose conditional signal
// s0 clears the relative mask threshold; normalization touches (s1,s2,s3)
// only, s0 always stays raw.
struct StokesField {
  Grid2D grid;
  std::vector<double> s0, s1, s2, s3;
  std::vector<unsigned char> valid;
  bool normalized = false;

  long index(int ix, int iy) const {
    return static_cast<long>(iy) * grid.samples_per_axis + ix;
  }
  double x(int ix) const { return grid.coord(ix); }
  double y(int iy) const { return grid.coord(iy); }
};

// Mask thresholds for fields carried as raw doubles (normalize_local and the
// unnormalized stokes_field output): points with s0 <= max(kMaskRelFloor *
// max(s0), kMaskAbsFloor) are invalid.  The floors sit just above where
// double arithmetic on the amplitude products loses precision (denormals);
// the unit-vector texture itself stays well defined at any representable
// signal level, and every masked ring would bite a piece out of the topology
// integrals.  The scale-free normalized evaluation needs no signal
// threshold: only genuine zeros of the conditional trace are masked there.
inline constexpr double kMaskRelFloor = 1e-250;
inline constexpr double kMaskAbsFloor = 5e-300;

// A point counts as unpolarized (no direction, masked) when the Stokes
// vector length falls below this fraction of the local s0; below it the
// direction is cancellation noise.
inline constexpr double kUnpolarizedRel = 1e-12;

// Equal-modulus states (|ell1| = |ell2|) have a direction that depends on
// azimuth alone — the common radial profile cancels in normalization for any
// density matrix.  Their full |ell2 - ell1| winding survives down to r = 0,
// so inside a core of a few samples the azimuth steps alias and finite
// differences there inject a grid-independent bias into the topology
// integral.  The normalized evaluation masks r < kRingCoreSamples*|dl|*h for
// these states; the masked disk carries exactly zero true density.  States
// with |ell1| != |ell2| pin the core to a pole (winding amplitude ~ r^|k|),
// which suppresses the aliasing, and keep their real core contribution.
inline constexpr double kRingCoreSamples = 4.0;

struct StokesOptions {
  bool qwp = false;  // apply the quarter-wave-plate rotation to photon B
  int threads = 0;   // <= 0: all hardware threads
  // Produce unit vectors directly from the scale-free conditional state.
  // Unlike stokes_field + normalize_local on the stored doubles, this keeps
  // the texture exact even where the raw s0 underflows, so wide-window
  // topology stays accurate; s0 is still stored raw (0.0 once it underflows).
  bool normalized = false;
};

// Unnormalised conditional polarization operator of photon B at (x, y):
//   rho_B[s][t] = sum_pq rho[(p,s),(q,t)] LG_{ell_p}(x,y) conj(LG_{ell_q}(x,y)).
Eigen::Matrix2cd conditional_polarization_state(const Eigen::Matrix4cd& rho,
                                                const HybridStateSpec& spec,
                                                double x, double y);

// Quarter-wave-plate action R rho_B R^+ with R = (1/sqrt 2) [[1, i], [i, 1]].
Eigen::Matrix2cd qwp_rotate(const Eigen::Matrix2cd& rho_b);

StokesField stokes_field(const Eigen::Matrix4cd& rho,
                         const HybridStateSpec& spec, const Grid2D& grid,
                         const StokesOptions& options = {});

// Rescales (s1,s2,s3) to local unit vectors where the mask passes; masked
// points get zeroed components and valid = 0.  Idempotent.
void normalize_local(StokesField& field);

}  // namespace qskyrm

#pragma once

#include <array>
#include <vector>

#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/stokes_field.hpp"

namespace qskyrm {

// Skyrmion density of the normalised Stokes texture,
//   Sigma_z = S . (dS/dx x dS/dy),
// from central differences, falling back to one-sided second-order (then
// first-order) stencils at grid edges and mask boundaries.  Entries at masked
// or stencil-less points are zero.
std::vector<double> sigma_z(const StokesField& field);

// N = (1/4pi) * sum Sigma_z * dx * dy.  Requires a normalised field; warns on
// stderr below 65 samples per axis.
double skyrme_number(const StokesField& field);

// Boundary-limit form: N = dl * (1/(1+|g(0)|^2) - 1/(1+|g(inf)|^2)) with
// dl = ell2 - ell1 and g the V/H amplitude ratio.  For |ell2| != |ell1| the
// limits are 0 or infinity, so N is an exact integer independent of alpha and
// gamma; equal moduli give 0, and so does the alpha = 1 product state.
double closed_form_skyrme(const HybridStateSpec& spec);

// closed_form_skyrme rounded to the nearest integer.
double theory_skyrme(const HybridStateSpec& spec);

// Poincare-sphere sampling check.  The sphere is split into n_cells Voronoi
// cells around a Fibonacci lattice; coverage is the fraction of cells hit by
// at least one valid sample.  Segments partition the *beam cross-section*
// into n_segments equal azimuthal sectors: a texture wrapping the sphere |N|
// times should cover it once per sector, so a missed wrap shows up as a weak
// segment.
struct CoverageResult {
  double total = 0.0;
  std::vector<double> per_segment;
  long cells_used = 0;
};

CoverageResult coverage(const StokesField& field, int n_segments, int n_cells);

// Unit-sphere Fibonacci lattice: z_i = 1 - (2i+1)/n, azimuth stepped by the
// golden angle.
std::vector<std::array<double, 3>> fibonacci_sphere(int n);

// Exact nearest fibonacci_sphere(n) center of a unit vector, found by an
// index-window search over the z-sorted lattice with an optimality guard.
int nearest_sphere_cell(const std::vector<std::array<double, 3>>& centers,
                        const std::array<double, 3>& v);

// Active radial rescale (r, phi) -> (scale*r, phi): the output at (x, y) is
// the input bilinearly interpolated at (x/scale, y/scale).  Queries off-grid
// or touching masked source samples become invalid; (s1,s2,s3) are
// renormalised after interpolation.  Requires a normalised field; throws if
// nothing valid remains.
StokesField transform_field(const StokesField& field, double radial_scale);

// Inverse stereographic map of the plane onto the unit sphere:
// (x, y) -> (2x, 2y, -1 + x^2 + y^2) / (1 + x^2 + y^2).
std::array<double, 3> stereographic(double x, double y);

// Grid whose half-width tracks the texture crossover radius
//   r* = (w0/sqrt 2) * G^(-1/k),  G^2 = ((1-a^2)/a^2) |ell1|!/|ell2|!,
//   k = |ell2| - |ell1|,
// so decayed or high-order states stay as well resolved as the reference
// state on the base grid.  |k| = 1 textures get half-width and samples
// boosted (growing with the winding |ell2 - ell1|): their algebraic tails
// converge slowest and the truncated tail enters N with weight |ell2 -
// ell1|.  |k| >= 2 textures get samples boosted by |k| for their steeper
// polar transition.  Equal moduli and the product state keep the base grid.
Grid2D scaled_grid_for(const HybridStateSpec& spec, const Grid2D& base);

struct TopologyReport {
  double n_numeric = 0.0;
  double n_closed_form = 0.0;
  double n_theory = 0.0;
  double coverage_total = 0.0;
  std::vector<double> coverage_per_segment;
  long cells_used = 0;
};

// n_segments = 0 chooses max(1, |n_theory|) sectors.
TopologyReport topology_report(const StokesField& normalized_field,
                               const HybridStateSpec& spec, int n_cells = 2000,
                               int n_segments = 0);

}  // namespace qskyrm

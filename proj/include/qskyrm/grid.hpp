#pragma once

namespace qskyrm {

// Square sampling window centred on the beam axis.  Both axes span
// [-half_width, half_width]; samples_per_axis is odd so the axis point itself
// lies on the lattice.
struct Grid2D {
  double half_width = 8.0;
  int samples_per_axis = 257;

  double step() const { return 2.0 * half_width / (samples_per_axis - 1); }
  double coord(int i) const { return -half_width + i * step(); }
  long size() const {
    return static_cast<long>(samples_per_axis) * samples_per_axis;
  }
};

// Throws std::invalid_argument unless half_width > 0 and samples_per_axis is
// an odd number >= 33 (below that the finite-difference stencils are not worth
// trusting).
void validate_grid(const Grid2D& grid);

}  // namespace qskyrm

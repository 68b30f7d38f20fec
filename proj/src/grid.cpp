#include "qskyrm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qskyrm {

void validate_grid(const Grid2D& grid) {
  if (!(grid.half_width > 0.0) || !std::isfinite(grid.half_width)) {
    throw std::invalid_argument("grid half_width must be positive and finite");
  }
  if (grid.samples_per_axis < 33 || grid.samples_per_axis % 2 == 0) {
    throw std::invalid_argument(
        "grid samples_per_axis must be an odd number >= 33, got " +
        std::to_string(grid.samples_per_axis));
  }
}

}  // namespace qskyrm

#pragma once

#include <array>

#include <Eigen/Dense>

namespace qskyrm {

// Basis order shared by every 4x4 operator in the project.
inline constexpr std::array<const char*, 4> kBasisLabels = {"l1H", "l1V",
                                                            "l2H", "l2V"};

// Acceptance thresholds for matrices crossing a module boundary (file loads,
// measurement inputs, metric inputs).  Looser than what freshly constructed
// matrices satisfy, to survive serialization round trips.
struct PhysicalityTolerances {
  double hermiticity = 1e-9;
  double trace = 1e-8;
  double min_eigenvalue = -1e-7;
};

// Throws std::invalid_argument describing the first violated property.
void validate_density_matrix(const Eigen::Matrix4cd& rho,
                             const PhysicalityTolerances& tol = {});

bool is_physical(const Eigen::Matrix4cd& rho,
                 const PhysicalityTolerances& tol = {});

}  // namespace qskyrm

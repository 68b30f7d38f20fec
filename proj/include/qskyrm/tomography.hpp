#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qskyrm/measurement.hpp"

namespace qskyrm {

// Pauli basis used throughout: sigma_1 = diag(1,-1) (population imbalance),
// sigma_2 = [[0,1],[1,0]], sigma_3 = [[0,-i],[i,0]].  With this ordering the
// six settings of each qubit point along +/- the three axes.
Eigen::Matrix2cd pauli(int j);  // j in 1..3

// Bloch-product expansion rho = (I + a.sigma x I + I x c.sigma
//                                  + sum_mn b_mn sigma_m x sigma_n) / 4.
struct PauliCoefficients {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  Eigen::Matrix3d b = Eigen::Matrix3d::Zero();
};

PauliCoefficients pauli_coefficients(const Eigen::Matrix4cd& rho);
Eigen::Matrix4cd from_pauli(const PauliCoefficients& coeff);

// Unit vector (in the sigma_1..3 axes) whose projector equals the setting's.
Eigen::Vector3d spatial_axis(SpatialSetting s);
Eigen::Vector3d pol_axis(PolSetting s);

// Clips negative eigenvalues to zero and rescales the remaining positive
// spectrum multiplicatively to unit trace (equivalent to subtracting each
// deficit pro rata), keeping the eigenvectors.  Requires a Hermitian input
// with some positive spectral weight.
Eigen::Matrix4cd project_physical(const Eigen::Matrix4cd& hermitian);

struct ReconstructOptions {
  // Post-hoc physicality projection of the least-squares solution.  Switch
  // off to inspect the raw (possibly unphysical) linear inversion.
  bool project = true;
  // Tikhonov ridge on the normal equations; the design matrix is full rank,
  // so this only guards against degenerate hand-built record sets.
  double ridge = 1e-10;
};

struct TomographyResult {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  double residual = 0.0;  // sum of squared probability misfits of rho
  int iterations = 0;     // direct solve: always 0
};

// Least-squares inversion of the 36 coincidence probabilities:
//   p_k = (1 + a.n_k + c.m_k + n_k^T b m_k) / 4
// is linear in the 15 unknowns (a, c, b), solved via the normal equations.
// Records may carry counts (normalised per basis group) or probabilities.
TomographyResult reconstruct(const std::vector<MeasurementRecord>& records,
                             const ReconstructOptions& options = {});

}  // namespace qskyrm

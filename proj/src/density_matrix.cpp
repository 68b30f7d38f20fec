#include "qskyrm/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qskyrm {

void validate_density_matrix(const Eigen::Matrix4cd& rho,
                             const PhysicalityTolerances& tol) {
  if (!rho.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    throw std::invalid_argument("density matrix not Hermitian: max |rho - rho^+| = " +
                                std::to_string(herm));
  }
  const double trace_err = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (trace_err > tol.trace) {
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < tol.min_eigenvalue) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

bool is_physical(const Eigen::Matrix4cd& rho, const PhysicalityTolerances& tol) {
  try {
    validate_density_matrix(rho, tol);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace qskyrm

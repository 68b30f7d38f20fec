#include "qskyrm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qskyrm/density_matrix.hpp"

namespace qskyrm {

namespace {

// Eigenvalues of a rank-deficient PSD matrix come back with O(eps)·lambda_max
// noise; taking square roots would promote that to ~1e-8 in trace sums, so
// anything this far below the top eigenvalue is treated as an exact zero.
constexpr double kSpectralNoiseFloor = 1e-13;

Eigen::Vector4d clipped_sqrt(const Eigen::Vector4d& values) {
  const double floor = values.maxCoeff() * kSpectralNoiseFloor;
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    roots(i) = values(i) > floor ? std::sqrt(values(i)) : 0.0;
  }
  return roots;
}

Eigen::Matrix4cd matrix_sqrt(const Eigen::Matrix4cd& hermitian_psd) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitian_psd);
  const Eigen::Vector4d roots = clipped_sqrt(solver.eigenvalues());
  return solver.eigenvectors() * roots.asDiagonal() *
         solver.eigenvectors().adjoint();
}

Eigen::Matrix4cd hermitize(const Eigen::Matrix4cd& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

double fidelity(const Eigen::Matrix4cd& target,
                const Eigen::Matrix4cd& measured) {
  validate_density_matrix(target);
  validate_density_matrix(measured);
  const Eigen::Matrix4cd root_t = matrix_sqrt(hermitize(target));
  const Eigen::Matrix4cd inner = hermitize(root_t * measured * root_t);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(inner,
                                                         Eigen::EigenvaluesOnly);
  const double sum = clipped_sqrt(solver.eigenvalues()).sum();
  return std::clamp(sum * sum, 0.0, 1.0);
}

double concurrence(const Eigen::Matrix4cd& rho) {
  validate_density_matrix(rho);
  // sigma_y x sigma_y has +-1 on the antidiagonal: (-1, 1, 1, -1) top-right
  // to bottom-left in the product basis.
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd spin_flipped = flip * rho.conjugate() * flip;
  const Eigen::Matrix4cd root = matrix_sqrt(hermitize(rho));
  const Eigen::Matrix4cd inner = hermitize(root * spin_flipped * root);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(inner,
                                                         Eigen::EigenvaluesOnly);
  Eigen::Vector4d lambdas = clipped_sqrt(solver.eigenvalues());
  std::sort(lambdas.data(), lambdas.data() + 4, std::greater<double>());
  return std::max(0.0, lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3));
}

double purity(const Eigen::Matrix4cd& rho) {
  validate_density_matrix(rho);
  return (rho * rho).trace().real();
}

MetricReport metrics_report(const Eigen::Matrix4cd& target,
                            const Eigen::Matrix4cd& measured) {
  return {fidelity(target, measured), concurrence(measured), purity(measured)};
}

}  // namespace qskyrm

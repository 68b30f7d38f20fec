#pragma once

#include <Eigen/Dense>

namespace qskyrm {

struct MetricReport {
  double fidelity = 0.0;
  double concurrence = 0.0;
  double purity = 0.0;
};

// Uhlmann fidelity F = (tr sqrt(sqrt(rho_t) rho_m sqrt(rho_t)))^2 via
// eigendecomposition, with tiny negative round-off clamped.  Symmetric in its
// arguments and clamped to [0, 1].
double fidelity(const Eigen::Matrix4cd& target, const Eigen::Matrix4cd& measured);

// Two-qubit concurrence: spin-flip rho~ = (sy x sy) rho* (sy x sy), then
// C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
// eigenvalues of rho rho~ (computed through the Hermitian
// sqrt(rho) rho~ sqrt(rho) form for stability).
double concurrence(const Eigen::Matrix4cd& rho);

// tr(rho^2).
double purity(const Eigen::Matrix4cd& rho);

// fidelity(target, measured) plus concurrence and purity of `measured`.
MetricReport metrics_report(const Eigen::Matrix4cd& target,
                            const Eigen::Matrix4cd& measured);

}  // namespace qskyrm

#pragma once

#include <Eigen/Dense>

namespace qskyrm {

// Two-photon hybrid state
//
//   |psi> = alpha |ell1>|H> + sqrt(1 - alpha^2) e^{i gamma} |ell2>|V>
//
// in the fixed product basis [ |ell1 H>, |ell1 V>, |ell2 H>, |ell2 V> ].
// alpha is the amplitude of the H arm and lives in [1/sqrt(2), 1]; w0 is the
// common beam waist of the two spatial modes.
struct HybridStateSpec {
  int ell1 = 1;
  int ell2 = 0;
  double alpha = 0.7071067811865476;
  double gamma = 0.0;
  double w0 = 1.0;
};

inline constexpr double kAlphaMin = 0.7071067811865476;  // 1/sqrt(2)

// Throws std::invalid_argument on ell1 == ell2, alpha outside
// [1/sqrt(2), 1] (beyond 1e-12 slack), or non-finite/non-positive parameters.
void validate_spec(const HybridStateSpec& spec);

Eigen::Vector4cd pure_state_vector(const HybridStateSpec& spec);
Eigen::Matrix4cd build_pure_state(const HybridStateSpec& spec);

// Entanglement decay a -> alpha_new a, b -> sqrt(1 - alpha_new^2) b: same mode
// pair and gamma, new amplitude balance.
HybridStateSpec apply_decay(const HybridStateSpec& spec, double alpha_new);

// Radius at which the decayed state reproduces the original texture:
//   r' = r * (sqrt(1 - alpha^2) / alpha)^(1 / (|ell2| - |ell1|)).
// Requires |ell1| != |ell2| (equal moduli have no crossover).
double decay_coordinate_map(const HybridStateSpec& spec, double alpha_new,
                            double r);

// Dominant-arm probability weight of a binary fork grating with modulation
// depth M in [0, 1]: first-order efficiency 1 - sinc^2(pi M) split evenly over
// the +/-1 orders gives weight sqrt(1 - sinc^2(pi M))/2 + 1/2 (0.5 at M = 0,
// 1 at M = 1).
double grating_alpha(double m_depth);

// sqrt of grating_alpha: converts the probability weight into a state
// amplitude usable as HybridStateSpec::alpha.
double grating_amplitude(double m_depth);

// (1 - lambda) rho + lambda I/4.
Eigen::Matrix4cd depolarize(const Eigen::Matrix4cd& rho, double lambda);

}  // namespace qskyrm

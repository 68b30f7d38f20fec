#include "qskyrm/hybrid_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qskyrm {

namespace {
constexpr double kAlphaSlack = 1e-12;
}

void validate_spec(const HybridStateSpec& spec) {
  if (spec.ell1 == spec.ell2) {
    throw std::invalid_argument("spatial modes must differ (ell1 == ell2)");
  }
  if (!std::isfinite(spec.alpha) || !std::isfinite(spec.gamma)) {
    throw std::invalid_argument("alpha and gamma must be finite");
  }
  if (!(spec.w0 > 0.0) || !std::isfinite(spec.w0)) {
    throw std::invalid_argument("beam waist must be positive and finite");
  }
  if (spec.alpha < kAlphaMin - kAlphaSlack || spec.alpha > 1.0 + kAlphaSlack) {
    throw std::invalid_argument("alpha must lie in [1/sqrt(2), 1], got " +
                                std::to_string(spec.alpha));
  }
}

Eigen::Vector4cd pure_state_vector(const HybridStateSpec& spec) {
  validate_spec(spec);
  const double a = std::clamp(spec.alpha, kAlphaMin, 1.0);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = a;                                  // |ell1 H>
  psi(3) = std::polar(b, spec.gamma);          // |ell2 V>
  return psi;
}

Eigen::Matrix4cd build_pure_state(const HybridStateSpec& spec) {
  const Eigen::Vector4cd psi = pure_state_vector(spec);
  return psi * psi.adjoint();
}

HybridStateSpec apply_decay(const HybridStateSpec& spec, double alpha_new) {
  validate_spec(spec);
  HybridStateSpec decayed = spec;
  decayed.alpha = alpha_new;
  validate_spec(decayed);
  return decayed;
}

double decay_coordinate_map(const HybridStateSpec& spec, double alpha_new,
                            double r) {
  const HybridStateSpec decayed = apply_decay(spec, alpha_new);
  const int k = std::abs(decayed.ell2) - std::abs(decayed.ell1);
  if (k == 0) {
    throw std::invalid_argument(
        "decay coordinate map undefined for equal |ell|: no crossover");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be >= 0 and finite");
  }
  const double a = std::clamp(decayed.alpha, kAlphaMin, 1.0);
  if (a >= 1.0) {
    throw std::invalid_argument(
        "decay coordinate map undefined at alpha = 1 (product state)");
  }
  const double factor = std::sqrt(1.0 - a * a) / a;
  return r * std::pow(factor, 1.0 / k);
}

double grating_alpha(double m_depth) {
  if (!std::isfinite(m_depth) || m_depth < 0.0 || m_depth > 1.0) {
    throw std::invalid_argument("modulation depth must lie in [0, 1]");
  }
  const double x = std::numbers::pi * m_depth;
  const double sinc = (x == 0.0) ? 1.0 : std::sin(x) / x;
  const double zero_order = sinc * sinc;
  return 0.5 * std::sqrt(std::max(0.0, 1.0 - zero_order)) + 0.5;
}

double grating_amplitude(double m_depth) {
  return std::sqrt(grating_alpha(m_depth));
}

Eigen::Matrix4cd depolarize(const Eigen::Matrix4cd& rho, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("depolarization weight must lie in [0, 1]");
  }
  return (1.0 - lambda) * rho +
         lambda * 0.25 * Eigen::Matrix4cd::Identity();
}

}  // namespace qskyrm

#include "qskyrm/lg_modes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qskyrm {

namespace {

void check_finite_radius(double r, double w0) {
  if (!(w0 > 0.0) || !std::isfinite(w0)) {
    throw std::invalid_argument("beam waist must be positive and finite");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be >= 0 and finite");
  }
}

}  // namespace

LogAmplitude lg_log_amplitude(int ell, double r, double phi, double w0) {
  check_finite_radius(r, w0);
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("azimuth must be finite");
  }
  const int m = std::abs(ell);
  const double norm =
      0.5 * (std::log(2.0 / std::numbers::pi) - std::lgamma(m + 1.0)) -
      std::log(w0);
  LogAmplitude a;
  a.phase = ell * phi;
  if (r == 0.0) {
    a.log_mag = m > 0 ? -std::numeric_limits<double>::infinity() : norm;
    return a;
  }
  const double u = std::numbers::sqrt2 * r / w0;
  a.log_mag = norm + m * std::log(u) - (r / w0) * (r / w0);
  return a;
}

std::complex<double> lg_amplitude(int ell, double r, double phi, double w0) {
  const LogAmplitude a = lg_log_amplitude(ell, r, phi, w0);
  return std::polar(std::exp(a.log_mag), a.phase);
}

double amplitude_ratio(int ell1, int ell2, double r, double w0) {
  check_finite_radius(r, w0);
  const int m1 = std::abs(ell1);
  const int m2 = std::abs(ell2);
  if (r == 0.0) {
    if (m2 > m1) return 0.0;
    if (m2 == m1) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  const double log_ratio = 0.5 * (std::lgamma(m1 + 1.0) - std::lgamma(m2 + 1.0)) +
                           (m2 - m1) * std::log(std::numbers::sqrt2 * r / w0);
  return std::exp(log_ratio);
}

}  // namespace qskyrm

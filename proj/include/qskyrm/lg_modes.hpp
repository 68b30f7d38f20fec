#pragma once

#include <complex>

#include "qskyrm/grid.hpp"

namespace qskyrm {

// Waist-plane Laguerre-Gauss amplitude with radial index p = 0:
//
//   LG_l(r, phi) = sqrt(2 / (pi |l|!)) * (1/w0) * (sqrt(2) r / w0)^|l|
//                  * exp(-r^2 / w0^2) * exp(i l phi)
//
// normalised to unit L2 norm over the plane.  The factorial is evaluated in
// log space so |l| well beyond the range used here stays finite.
std::complex<double> lg_amplitude(int ell, double r, double phi, double w0);

// Same amplitude in log-magnitude form: LG_l = exp(log_mag) * e^{i phase},
// with log_mag = -infinity on the axis for |l| > 0.  Ratios and conditional
// states built from log magnitudes stay exact at radii where the common
// Gaussian envelope itself underflows a double.
struct LogAmplitude {
  double log_mag;
  double phase;
};

LogAmplitude lg_log_amplitude(int ell, double r, double phi, double w0);

// |LG_ell2(r)| / |LG_ell1(r)|, evaluated in log space so the individual
// Gaussians cannot underflow first.  At r = 0 the limit is returned: 0 when
// |ell2| > |ell1|, 1 when |ell2| == |ell1|, and +infinity (the documented pole
// sentinel) when |ell2| < |ell1|.
double amplitude_ratio(int ell1, int ell2, double r, double w0);

}  // namespace qskyrm

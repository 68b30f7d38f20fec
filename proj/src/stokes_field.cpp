#include "qskyrm/stokes_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qskyrm/density_matrix.hpp"
#include "qskyrm/lg_modes.hpp"
#include "qskyrm/threading.hpp"

namespace qskyrm {

namespace {

// Conditional state with the dominant mode magnitude factored out:
// rho_B = exp(2 * log_scale) * scaled.  The scaled matrix has entries of
// order one wherever any mode amplitude is nonzero, so the polarization
// direction survives radii where rho_B itself underflows.
struct ScaledConditional {
  Eigen::Matrix2cd scaled;
  double log_scale;
};

ScaledConditional scaled_conditional(const Eigen::Matrix4cd& rho,
                                     const HybridStateSpec& spec, double x,
                                     double y) {
  const double r = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  const LogAmplitude a1 = lg_log_amplitude(spec.ell1, r, phi, spec.w0);
  const LogAmplitude a2 = lg_log_amplitude(spec.ell2, r, phi, spec.w0);

  ScaledConditional out;
  out.log_scale = std::max(a1.log_mag, a2.log_mag);
  out.scaled.setZero();
  std::complex<double> v[2] = {{0.0, 0.0}, {0.0, 0.0}};
  if (std::isfinite(out.log_scale)) {
    v[0] = std::polar(std::exp(a1.log_mag - out.log_scale), a1.phase);
    v[1] = std::polar(std::exp(a2.log_mag - out.log_scale), a2.phase);
  }
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const std::complex<double> weight = v[p] * std::conj(v[q]);
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          out.scaled(s, t) += rho(2 * p + s, 2 * q + t) * weight;
        }
      }
    }
  }
  return out;
}

}  // namespace

Eigen::Matrix2cd conditional_polarization_state(const Eigen::Matrix4cd& rho,
                                                const HybridStateSpec& spec,
                                                double x, double y) {
  const ScaledConditional c = scaled_conditional(rho, spec, x, y);
  const double factor =
      std::isfinite(c.log_scale) ? std::exp(2.0 * c.log_scale) : 0.0;
  return factor * c.scaled;
}

Eigen::Matrix2cd qwp_rotate(const Eigen::Matrix2cd& rho_b) {
  constexpr std::complex<double> kI{0.0, 1.0};
  Eigen::Matrix2cd r;
  r << 1.0, kI, kI, 1.0;
  r *= 0.7071067811865476;
  return r * rho_b * r.adjoint();
}

StokesField stokes_field(const Eigen::Matrix4cd& rho,
                         const HybridStateSpec& spec, const Grid2D& grid,
                         const StokesOptions& options) {
  validate_density_matrix(rho);
  validate_spec(spec);
  validate_grid(grid);

  StokesField field;
  field.grid = grid;
  const long total = grid.size();
  field.s0.resize(total);
  field.s1.resize(total);
  field.s2.resize(total);
  field.s3.resize(total);
  field.valid.assign(total, 1);

  double ring_core_r2 = -1.0;
  if (options.normalized && std::abs(spec.ell1) == std::abs(spec.ell2)) {
    const double r_core =
        kRingCoreSamples * std::abs(spec.ell2 - spec.ell1) * grid.step();
    ring_core_r2 = r_core * r_core;
  }

  const int n = grid.samples_per_axis;
  parallel_for(0, n, options.threads, [&](int iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = grid.coord(ix);
      ScaledConditional c = scaled_conditional(rho, spec, x, y);
      if (options.qwp) c.scaled = qwp_rotate(c.scaled);
      const double t0 = (c.scaled(0, 0) + c.scaled(1, 1)).real();
      const double t1 = (c.scaled(0, 0) - c.scaled(1, 1)).real();
      const double t2 = 2.0 * c.scaled(0, 1).real();
      const double t3 = -2.0 * c.scaled(0, 1).imag();
      const double factor =
          std::isfinite(c.log_scale) ? std::exp(2.0 * c.log_scale) : 0.0;
      const long i = field.index(ix, iy);
      field.s0[i] = factor * t0;
      if (options.normalized) {
        const double m = std::sqrt(t1 * t1 + t2 * t2 + t3 * t3);
        if (!(t0 > 0.0) || !std::isfinite(c.log_scale) ||
            m <= kUnpolarizedRel * t0 || x * x + y * y < ring_core_r2) {
          field.valid[i] = 0;
          field.s1[i] = field.s2[i] = field.s3[i] = 0.0;
        } else {
          field.s1[i] = t1 / m;
          field.s2[i] = t2 / m;
          field.s3[i] = t3 / m;
        }
      } else {
        field.s1[i] = factor * t1;
        field.s2[i] = factor * t2;
        field.s3[i] = factor * t3;
      }
    }
  });

  if (options.normalized) {
    long alive = 0;
    for (long i = 0; i < total; ++i) alive += field.valid[i];
    if (alive == 0) {
      throw std::runtime_error("conditional signal vanishes on the whole grid");
    }
    field.normalized = true;
    return field;
  }

  double max_s0 = 0.0;
  for (long i = 0; i < total; ++i) max_s0 = std::max(max_s0, field.s0[i]);
  if (max_s0 <= 0.0) {
    throw std::runtime_error("conditional signal vanishes on the whole grid");
  }
  const double mask = std::max(kMaskRelFloor * max_s0, kMaskAbsFloor);
  for (long i = 0; i < total; ++i) {
    field.valid[i] = field.s0[i] > mask ? 1 : 0;
  }
  return field;
}

void normalize_local(StokesField& field) {
  validate_grid(field.grid);
  const long total = field.grid.size();
  if (static_cast<long>(field.s0.size()) != total) {
    throw std::invalid_argument("Stokes field size does not match its grid");
  }
  if (field.normalized) return;
  double max_s0 = 0.0;
  for (long i = 0; i < total; ++i) max_s0 = std::max(max_s0, field.s0[i]);
  if (max_s0 <= 0.0) {
    throw std::runtime_error("cannot normalise a field with no signal");
  }
  const double mask = std::max(kMaskRelFloor * max_s0, kMaskAbsFloor);
  for (long i = 0; i < total; ++i) {
    if (field.s0[i] <= mask) {
      field.valid[i] = 0;
      field.s1[i] = field.s2[i] = field.s3[i] = 0.0;
      continue;
    }
    const double m = std::sqrt(field.s1[i] * field.s1[i] +
                               field.s2[i] * field.s2[i] +
                               field.s3[i] * field.s3[i]);
    if (m <= kUnpolarizedRel * field.s0[i]) {
      field.valid[i] = 0;
      field.s1[i] = field.s2[i] = field.s3[i] = 0.0;
      continue;
    }
    field.valid[i] = 1;
    field.s1[i] /= m;
    field.s2[i] /= m;
    field.s3[i] /= m;
  }
  field.normalized = true;
}

}  // namespace qskyrm

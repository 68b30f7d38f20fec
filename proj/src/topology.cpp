#include "qskyrm/topology.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qskyrm {

namespace {

struct Derivative {
  bool ok = false;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

// One derivative along a lattice direction, choosing the stencil from the
// validity of the neighbours so masked points never enter.  The same stencil
// is applied to all three components.
Derivative component_derivative(const StokesField& f, int ix, int iy, int dx,
                                int dy) {
  const int n = f.grid.samples_per_axis;
  const double h = f.grid.step();
  const auto usable = [&](int step) {
    const int jx = ix + step * dx;
    const int jy = iy + step * dy;
    if (jx < 0 || jx >= n || jy < 0 || jy >= n) return false;
    return f.valid[f.index(jx, jy)] != 0;
  };
  const auto at = [&](int step, const std::vector<double>& c) {
    return c[f.index(ix + step * dx, iy + step * dy)];
  };

  Derivative d;
  if (usable(-2) && usable(-1) && usable(1) && usable(2)) {
    const auto c4 = [&](const std::vector<double>& c) {
      return (-at(2, c) + 8.0 * at(1, c) - 8.0 * at(-1, c) + at(-2, c)) /
             (12.0 * h);
    };
    d.d1 = c4(f.s1);
    d.d2 = c4(f.s2);
    d.d3 = c4(f.s3);
  } else if (usable(-1) && usable(1)) {
    d.d1 = (at(1, f.s1) - at(-1, f.s1)) / (2.0 * h);
    d.d2 = (at(1, f.s2) - at(-1, f.s2)) / (2.0 * h);
    d.d3 = (at(1, f.s3) - at(-1, f.s3)) / (2.0 * h);
  } else if (usable(1) && usable(2)) {
    d.d1 = (-3.0 * at(0, f.s1) + 4.0 * at(1, f.s1) - at(2, f.s1)) / (2.0 * h);
    d.d2 = (-3.0 * at(0, f.s2) + 4.0 * at(1, f.s2) - at(2, f.s2)) / (2.0 * h);
    d.d3 = (-3.0 * at(0, f.s3) + 4.0 * at(1, f.s3) - at(2, f.s3)) / (2.0 * h);
  } else if (usable(-1) && usable(-2)) {
    d.d1 = (3.0 * at(0, f.s1) - 4.0 * at(-1, f.s1) + at(-2, f.s1)) / (2.0 * h);
    d.d2 = (3.0 * at(0, f.s2) - 4.0 * at(-1, f.s2) + at(-2, f.s2)) / (2.0 * h);
    d.d3 = (3.0 * at(0, f.s3) - 4.0 * at(-1, f.s3) + at(-2, f.s3)) / (2.0 * h);
  } else if (usable(1)) {
    d.d1 = (at(1, f.s1) - at(0, f.s1)) / h;
    d.d2 = (at(1, f.s2) - at(0, f.s2)) / h;
    d.d3 = (at(1, f.s3) - at(0, f.s3)) / h;
  } else if (usable(-1)) {
    d.d1 = (at(0, f.s1) - at(-1, f.s1)) / h;
    d.d2 = (at(0, f.s2) - at(-1, f.s2)) / h;
    d.d3 = (at(0, f.s3) - at(-1, f.s3)) / h;
  } else {
    return d;
  }
  d.ok = true;
  return d;
}

double log_factorial(int m) { return std::lgamma(m + 1.0); }

int next_odd_at_least(int n) {
  if (n < 33) n = 33;
  return n % 2 == 0 ? n + 1 : n;
}

}  // namespace

std::vector<double> sigma_z(const StokesField& field) {
  if (!field.normalized) {
    throw std::invalid_argument("sigma_z requires a normalised Stokes field");
  }
  validate_grid(field.grid);
  const int n = field.grid.samples_per_axis;
  std::vector<double> density(field.grid.size(), 0.0);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const long i = field.index(ix, iy);
      if (!field.valid[i]) continue;
      const Derivative gx = component_derivative(field, ix, iy, 1, 0);
      const Derivative gy = component_derivative(field, ix, iy, 0, 1);
      if (!gx.ok || !gy.ok) continue;
      const double cx = gx.d2 * gy.d3 - gx.d3 * gy.d2;
      const double cy = gx.d3 * gy.d1 - gx.d1 * gy.d3;
      const double cz = gx.d1 * gy.d2 - gx.d2 * gy.d1;
      density[i] = field.s1[i] * cx + field.s2[i] * cy + field.s3[i] * cz;
    }
  }
  return density;
}

double skyrme_number(const StokesField& field) {
  if (!field.normalized) {
    throw std::invalid_argument(
        "skyrme_number requires a normalised Stokes field");
  }
  if (field.grid.samples_per_axis < 65) {
    std::cerr << "warning: skyrme_number on " << field.grid.samples_per_axis
              << " samples/axis; expect low accuracy below 65\n";
  }
  const std::vector<double> density = sigma_z(field);
  double sum = 0.0;
  for (double v : density) sum += v;
  const double h = field.grid.step();
  return sum * h * h / (4.0 * std::numbers::pi);
}

double closed_form_skyrme(const HybridStateSpec& spec) {
  validate_spec(spec);
  const int k = std::abs(spec.ell2) - std::abs(spec.ell1);
  if (k == 0) return 0.0;
  if (spec.alpha >= 1.0 - 1e-12) return 0.0;  // product state: no wrap
  // |g(0)| and |g(inf)| are 0 or infinity depending only on sign(k), so the
  // two boundary terms 1/(1+|g|^2) are exactly 1 or 0.
  const double term_zero = k > 0 ? 1.0 : 0.0;
  const double term_inf = k > 0 ? 0.0 : 1.0;
  return (spec.ell2 - spec.ell1) * (term_zero - term_inf);
}

double theory_skyrme(const HybridStateSpec& spec) {
  return std::round(closed_form_skyrme(spec));
}

std::vector<std::array<double, 3>> fibonacci_sphere(int n) {
  if (n < 2) {
    throw std::invalid_argument("sphere lattice needs at least 2 points");
  }
  constexpr double kGoldenFrac = 0.6180339887498949;  // 1/phi
  std::vector<std::array<double, 3>> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double frac = std::fmod(i * kGoldenFrac, 1.0);
    const double az = 2.0 * std::numbers::pi * frac;
    points.push_back({r * std::cos(az), r * std::sin(az), z});
  }
  return points;
}

int nearest_sphere_cell(const std::vector<std::array<double, 3>>& centers,
                        const std::array<double, 3>& v) {
  const int n = static_cast<int>(centers.size());
  // Centers are sorted in z with uniform spacing 2/n, so the nearest one is
  // inside a small index window around the query's z; the window grows until
  // the best candidate provably beats everything outside it.
  const double iz = (1.0 - v[2]) * 0.5 * n - 0.5;
  int window = std::max(4, static_cast<int>(std::ceil(1.75 * std::sqrt(n))));
  while (true) {
    const int lo = std::max(0, static_cast<int>(std::floor(iz)) - window);
    const int hi = std::min(n - 1, static_cast<int>(std::ceil(iz)) + window);
    int best = lo;
    double best_d2 = std::numeric_limits<double>::max();
    for (int i = lo; i <= hi; ++i) {
      const auto& c = centers[i];
      const double dx = c[0] - v[0];
      const double dy = c[1] - v[1];
      const double dz = c[2] - v[2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    // Any center outside the window differs in z by at least this much.
    const double z_guard = (window - 1) * 2.0 / n;
    if (best_d2 <= z_guard * z_guard || (lo == 0 && hi == n - 1)) {
      return best;
    }
    window *= 2;
  }
}

CoverageResult coverage(const StokesField& field, int n_segments, int n_cells) {
  if (!field.normalized) {
    throw std::invalid_argument("coverage requires a normalised Stokes field");
  }
  if (n_segments < 1) {
    throw std::invalid_argument("coverage needs at least 1 segment");
  }
  if (n_cells < 8) {
    throw std::invalid_argument("coverage needs at least 8 sphere cells");
  }
  const auto centers = fibonacci_sphere(n_cells);
  std::vector<unsigned char> hit(n_cells, 0);
  std::vector<unsigned char> hit_seg(
      static_cast<size_t>(n_cells) * n_segments, 0);

  const int n = field.grid.samples_per_axis;
  long samples_seen = 0;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const long i = field.index(ix, iy);
      if (!field.valid[i]) continue;
      ++samples_seen;
      // Sphere axes (x,y,z) = (s2,s3,s1): the texture poles sit on +-z.
      const std::array<double, 3> v = {field.s2[i], field.s3[i], field.s1[i]};
      const int cell = nearest_sphere_cell(centers, v);
      hit[cell] = 1;
      const double az = std::atan2(field.y(iy), field.x(ix));
      int seg = static_cast<int>((az + std::numbers::pi) /
                                 (2.0 * std::numbers::pi) * n_segments);
      seg = std::clamp(seg, 0, n_segments - 1);
      hit_seg[static_cast<size_t>(seg) * n_cells + cell] = 1;
    }
  }
  if (samples_seen == 0) {
    throw std::runtime_error("coverage of a fully masked Stokes field");
  }

  CoverageResult result;
  result.cells_used = n_cells;
  long total = 0;
  for (unsigned char h : hit) total += h;
  result.total = static_cast<double>(total) / n_cells;
  result.per_segment.resize(n_segments);
  for (int s = 0; s < n_segments; ++s) {
    long seg_total = 0;
    for (int c = 0; c < n_cells; ++c) {
      seg_total += hit_seg[static_cast<size_t>(s) * n_cells + c];
    }
    result.per_segment[s] = static_cast<double>(seg_total) / n_cells;
  }
  return result;
}

StokesField transform_field(const StokesField& field, double radial_scale) {
  if (!field.normalized) {
    throw std::invalid_argument(
        "transform_field requires a normalised Stokes field");
  }
  if (!(radial_scale > 0.0) || !std::isfinite(radial_scale)) {
    throw std::invalid_argument("radial scale must be positive and finite");
  }
  validate_grid(field.grid);

  const int n = field.grid.samples_per_axis;
  const double w = field.grid.half_width;
  const double h = field.grid.step();

  StokesField out;
  out.grid = field.grid;
  out.s0.assign(field.grid.size(), 0.0);
  out.s1.assign(field.grid.size(), 0.0);
  out.s2.assign(field.grid.size(), 0.0);
  out.s3.assign(field.grid.size(), 0.0);
  out.valid.assign(field.grid.size(), 0);

  long alive = 0;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const double qx = field.x(ix) / radial_scale;
      const double qy = field.y(iy) / radial_scale;
      if (std::abs(qx) > w || std::abs(qy) > w) continue;
      const double fx = (qx + w) / h;
      const double fy = (qy + w) / h;
      const int jx = std::min(static_cast<int>(fx), n - 2);
      const int jy = std::min(static_cast<int>(fy), n - 2);
      const double tx = fx - jx;
      const double ty = fy - jy;
      const long i00 = field.index(jx, jy);
      const long i10 = field.index(jx + 1, jy);
      const long i01 = field.index(jx, jy + 1);
      const long i11 = field.index(jx + 1, jy + 1);
      if (!(field.valid[i00] && field.valid[i10] && field.valid[i01] &&
            field.valid[i11])) {
        continue;
      }
      const auto lerp = [&](const std::vector<double>& c) {
        return (1.0 - ty) * ((1.0 - tx) * c[i00] + tx * c[i10]) +
               ty * ((1.0 - tx) * c[i01] + tx * c[i11]);
      };
      const long i = out.index(ix, iy);
      out.s0[i] = lerp(field.s0);
      double v1 = lerp(field.s1);
      double v2 = lerp(field.s2);
      double v3 = lerp(field.s3);
      const double m = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
      if (m < 1e-300) continue;
      out.s1[i] = v1 / m;
      out.s2[i] = v2 / m;
      out.s3[i] = v3 / m;
      out.valid[i] = 1;
      ++alive;
    }
  }
  if (alive == 0) {
    throw std::runtime_error("radial rescale left no valid samples on the grid");
  }
  out.normalized = true;
  return out;
}

std::array<double, 3> stereographic(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("stereographic input must be finite");
  }
  const double r2 = x * x + y * y;
  const double denom = 1.0 + r2;
  return {2.0 * x / denom, 2.0 * y / denom, (r2 - 1.0) / denom};
}

Grid2D scaled_grid_for(const HybridStateSpec& spec, const Grid2D& base) {
  validate_spec(spec);
  validate_grid(base);
  const int k = std::abs(spec.ell2) - std::abs(spec.ell1);
  if (k == 0 || spec.alpha >= 1.0 - 1e-12) return base;
  const double a2 = spec.alpha * spec.alpha;
  const double log_g2 = std::log((1.0 - a2) / a2) +
                        log_factorial(std::abs(spec.ell1)) -
                        log_factorial(std::abs(spec.ell2));
  const double scale = std::exp(-0.5 * log_g2 / k);
  const int ak = std::abs(k);
  const int adl = std::abs(spec.ell2 - spec.ell1);
  // |k| = 1 textures relax algebraically, so the window widens (more for
  // high winding, whose truncated tail enters N with weight |dl|); |k| >= 2
  // textures cross the polar transition |k| times more steeply, so the same
  // window gets proportionally more samples.  High winding also needs finer
  // azimuthal sampling across the crossover ring.
  double width_boost = 1.0;
  double sample_boost = double(ak);
  if (ak == 1) {
    width_boost = std::numbers::sqrt2 * (adl >= 3 ? 1.25 : 1.0);
    sample_boost = width_boost * std::max(1.0, adl / std::numbers::sqrt2);
  }
  Grid2D grid = base;
  grid.half_width = base.half_width * scale * width_boost;
  if (sample_boost != 1.0) {
    const int spans = static_cast<int>(
        std::lround((base.samples_per_axis - 1) * sample_boost));
    grid.samples_per_axis = next_odd_at_least(spans + 1);
  }
  validate_grid(grid);
  return grid;
}

TopologyReport topology_report(const StokesField& normalized_field,
                               const HybridStateSpec& spec, int n_cells,
                               int n_segments) {
  TopologyReport report;
  report.n_numeric = skyrme_number(normalized_field);
  report.n_closed_form = closed_form_skyrme(spec);
  report.n_theory = theory_skyrme(spec);
  if (n_segments <= 0) {
    n_segments = std::max(1, static_cast<int>(std::abs(
                                 std::lround(report.n_theory))));
  }
  const CoverageResult cov = coverage(normalized_field, n_segments, n_cells);
  report.coverage_total = cov.total;
  report.coverage_per_segment = cov.per_segment;
  report.cells_used = cov.cells_used;
  return report;
}

}  // namespace qskyrm

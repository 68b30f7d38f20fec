#include "qskyrm/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qskyrm/rng.hpp"

namespace qskyrm {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kRoot2Inv = 0.7071067811865476;

// Index of the mutually-unbiased basis a setting belongs to: 0 for the
// computational pair, 1 for the theta = 0/pi pair, 2 for the circular pair.
int spatial_basis(SpatialSetting s) {
  switch (s) {
    case SpatialSetting::L1:
    case SpatialSetting::L2:
      return 0;
    case SpatialSetting::SupP:
    case SpatialSetting::SupM:
      return 1;
    default:
      return 2;
  }
}

int pol_basis(PolSetting s) {
  switch (s) {
    case PolSetting::H:
    case PolSetting::V:
      return 0;
    case PolSetting::D:
    case PolSetting::A:
      return 1;
    default:
      return 2;
  }
}

int setting_index(const MeasurementSetting& s) {
  return static_cast<int>(s.a) * 6 + static_cast<int>(s.b);
}

}  // namespace

std::array<MeasurementSetting, 36> tomography_settings() {
  std::array<MeasurementSetting, 36> settings;
  int k = 0;
  for (SpatialSetting a : kSpatialSettings) {
    for (PolSetting b : kPolSettings) {
      settings[k++] = {a, b};
    }
  }
  return settings;
}

Eigen::Vector2cd spatial_ket(SpatialSetting s) {
  switch (s) {
    case SpatialSetting::L1:
      return {1.0, 0.0};
    case SpatialSetting::L2:
      return {0.0, 1.0};
    case SpatialSetting::SupP:
      return {kRoot2Inv, kRoot2Inv};
    case SpatialSetting::SupM:
      return {kRoot2Inv, -kRoot2Inv};
    case SpatialSetting::SupPI:
      return {kRoot2Inv, kRoot2Inv * kI};
    default:
      return {kRoot2Inv, -kRoot2Inv * kI};
  }
}

Eigen::Vector2cd pol_ket(PolSetting s) {
  switch (s) {
    case PolSetting::H:
      return {1.0, 0.0};
    case PolSetting::V:
      return {0.0, 1.0};
    case PolSetting::D:
      return {kRoot2Inv, kRoot2Inv};
    case PolSetting::A:
      return {kRoot2Inv, -kRoot2Inv};
    case PolSetting::R:
      return {kRoot2Inv, kRoot2Inv * kI};
    default:
      return {kRoot2Inv, -kRoot2Inv * kI};
  }
}

Eigen::Matrix4cd projector(const MeasurementSetting& setting) {
  const Eigen::Vector2cd ka = spatial_ket(setting.a);
  const Eigen::Vector2cd kb = pol_ket(setting.b);
  const Eigen::Matrix2cd pa = ka * ka.adjoint();
  const Eigen::Matrix2cd pb = kb * kb.adjoint();
  Eigen::Matrix4cd p;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      p.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
    }
  }
  return p;
}

std::string to_string(SpatialSetting s) {
  switch (s) {
    case SpatialSetting::L1:
      return "L1";
    case SpatialSetting::L2:
      return "L2";
    case SpatialSetting::SupP:
      return "SUP_P";
    case SpatialSetting::SupM:
      return "SUP_M";
    case SpatialSetting::SupPI:
      return "SUP_PI";
    default:
      return "SUP_MI";
  }
}

std::string to_string(PolSetting s) {
  switch (s) {
    case PolSetting::H:
      return "H";
    case PolSetting::V:
      return "V";
    case PolSetting::D:
      return "D";
    case PolSetting::A:
      return "A";
    case PolSetting::R:
      return "R";
    default:
      return "L";
  }
}

SpatialSetting parse_spatial_setting(const std::string& label) {
  for (SpatialSetting s : kSpatialSettings) {
    if (to_string(s) == label) return s;
  }
  throw std::invalid_argument("unknown spatial setting label: " + label);
}

PolSetting parse_pol_setting(const std::string& label) {
  for (PolSetting s : kPolSettings) {
    if (to_string(s) == label) return s;
  }
  throw std::invalid_argument("unknown polarization setting label: " + label);
}

std::vector<MeasurementRecord> born_probabilities(const Eigen::Matrix4cd& rho) {
  validate_density_matrix(rho);
  std::vector<MeasurementRecord> records;
  records.reserve(36);
  for (const MeasurementSetting& setting : tomography_settings()) {
    const double p = (rho * projector(setting)).trace().real();
    if (p < -1e-12 || p > 1.0 + 1e-12) {
      throw std::runtime_error("Born probability out of range: " +
                               std::to_string(p));
    }
    records.push_back({setting, std::clamp(p, 0.0, 1.0), -1});
  }
  return records;
}

void simulate_counts(std::vector<MeasurementRecord>& records, long shots,
                     std::uint64_t seed) {
  if (shots < 0) {
    throw std::invalid_argument("shots must be >= 0");
  }
  SplitMix64 rng(seed);
  for (MeasurementRecord& record : records) {
    record.counts = rng.next_poisson(static_cast<double>(shots) *
                                     record.probability);
  }
}

std::array<double, 36> probabilities_from(
    const std::vector<MeasurementRecord>& records) {
  if (records.size() != 36) {
    throw std::invalid_argument("expected 36 measurement records, got " +
                                std::to_string(records.size()));
  }
  std::array<const MeasurementRecord*, 36> by_index{};
  for (const MeasurementRecord& record : records) {
    const int idx = setting_index(record.setting);
    if (by_index[idx] != nullptr) {
      throw std::invalid_argument("duplicate measurement setting " +
                                  to_string(record.setting.a) + "," +
                                  to_string(record.setting.b));
    }
    by_index[idx] = &record;
  }

  const bool with_counts =
      std::any_of(records.begin(), records.end(),
                  [](const MeasurementRecord& r) { return r.counts >= 0; });
  std::array<double, 36> probabilities{};
  if (!with_counts) {
    for (int i = 0; i < 36; ++i) probabilities[i] = by_index[i]->probability;
    return probabilities;
  }

  if (!std::all_of(records.begin(), records.end(),
                   [](const MeasurementRecord& r) { return r.counts >= 0; })) {
    throw std::invalid_argument(
        "records mix simulated counts with probability-only entries");
  }
  // Coincidence counts only fix probabilities up to the per-basis-pair flux,
  // so normalise within each group of four settings that sums to one.
  std::array<double, 9> group_sum{};
  for (int i = 0; i < 36; ++i) {
    const MeasurementSetting& s = by_index[i]->setting;
    group_sum[3 * spatial_basis(s.a) + pol_basis(s.b)] +=
        static_cast<double>(by_index[i]->counts);
  }
  for (int g = 0; g < 9; ++g) {
    if (group_sum[g] <= 0.0) {
      throw std::invalid_argument(
          "all-zero counts in a complete basis group; cannot normalise");
    }
  }
  for (int i = 0; i < 36; ++i) {
    const MeasurementSetting& s = by_index[i]->setting;
    probabilities[i] = static_cast<double>(by_index[i]->counts) /
                       group_sum[3 * spatial_basis(s.a) + pol_basis(s.b)];
  }
  return probabilities;
}

}  // namespace qskyrm

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qskyrm/density_matrix.hpp"

namespace qskyrm {

// Photon A (spatial qubit, {|ell1>, |ell2>}): the two basis modes plus the
// four balanced superpositions (|ell1> + e^{i theta} |ell2>)/sqrt(2) with
// theta = 0, pi, pi/2, -pi/2.
enum class SpatialSetting { L1, L2, SupP, SupM, SupPI, SupMI };

// Photon B (polarization qubit): H/V, diagonal/antidiagonal, right/left
// circular with R = (|H> + i|V>)/sqrt(2).
enum class PolSetting { H, V, D, A, R, L };

struct MeasurementSetting {
  SpatialSetting a;
  PolSetting b;
};

// One coincidence-tomography record.  counts < 0 means "not simulated".
struct MeasurementRecord {
  MeasurementSetting setting;
  double probability = 0.0;
  long counts = -1;
};

inline constexpr std::array<SpatialSetting, 6> kSpatialSettings = {
    SpatialSetting::L1,   SpatialSetting::L2,   SpatialSetting::SupP,
    SpatialSetting::SupM, SpatialSetting::SupPI, SpatialSetting::SupMI};
inline constexpr std::array<PolSetting, 6> kPolSettings = {
    PolSetting::H, PolSetting::V, PolSetting::D,
    PolSetting::A, PolSetting::R, PolSetting::L};

// The 36 settings in fixed order: spatial-major, polarization-minor, in the
// enum orders above.  Every file and record vector uses this order.
std::array<MeasurementSetting, 36> tomography_settings();

Eigen::Vector2cd spatial_ket(SpatialSetting s);
Eigen::Vector2cd pol_ket(PolSetting s);
Eigen::Matrix4cd projector(const MeasurementSetting& setting);

std::string to_string(SpatialSetting s);
std::string to_string(PolSetting s);
SpatialSetting parse_spatial_setting(const std::string& label);
PolSetting parse_pol_setting(const std::string& label);

// Born probabilities p = tr(rho P_A x P_B) for all 36 settings, clamped to
// [0, 1] (clamping only absorbs rounding at the 1e-12 level; rho itself must
// pass validate_density_matrix first).
std::vector<MeasurementRecord> born_probabilities(const Eigen::Matrix4cd& rho);

// Fills record.counts with Poisson(shots * probability) samples drawn from a
// single splitmix64 stream in record order.  shots = 0 leaves every record at
// counts = 0 (exact-probability mode is handled by the caller keeping
// probabilities).
void simulate_counts(std::vector<MeasurementRecord>& records, long shots,
                     std::uint64_t seed);

// Per-record probabilities for reconstruction.  If any record carries counts,
// counts are normalised within each complete-basis group of four settings
// (3 spatial bases x 3 polarization bases = 9 groups); otherwise the stored
// probabilities are passed through.  Throws on missing/duplicate settings or
// a group with zero total counts.
std::array<double, 36> probabilities_from(
    const std::vector<MeasurementRecord>& records);

}  // namespace qskyrm

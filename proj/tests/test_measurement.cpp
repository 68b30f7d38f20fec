#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/measurement.hpp"
#include "qskyrm/rng.hpp"

#include "test_support.hpp"

using namespace qskyrm;
using test_support::bell_spec;

namespace {

double probability_of(const std::vector<MeasurementRecord>& records,
                      SpatialSetting a, PolSetting b) {
  for (const auto& record : records) {
    if (record.setting.a == a && record.setting.b == b) {
      return record.probability;
    }
  }
  FAIL("setting not found");
  return -1.0;
}

long counts_of(const std::vector<MeasurementRecord>& records, SpatialSetting a,
               PolSetting b) {
  for (const auto& record : records) {
    if (record.setting.a == a && record.setting.b == b) return record.counts;
  }
  FAIL("setting not found");
  return -1;
}

}  // namespace

TEST_SUITE("measurement") {

TEST_CASE("fixed setting order, all distinct") {
  const auto settings = tomography_settings();
  CHECK(settings[0].a == SpatialSetting::L1);
  CHECK(settings[0].b == PolSetting::H);
  CHECK(settings[1].b == PolSetting::V);
  CHECK(settings[6].a == SpatialSetting::L2);
  CHECK(settings[35].a == SpatialSetting::SupMI);
  CHECK(settings[35].b == PolSetting::L);
  std::set<std::pair<int, int>> seen;
  for (const auto& s : settings) {
    seen.insert({static_cast<int>(s.a), static_cast<int>(s.b)});
  }
  CHECK(seen.size() == 36);
}

TEST_CASE("projectors are rank-1, Hermitian, idempotent") {
  const Eigen::Matrix4cd basis0 =
      projector({SpatialSetting::L1, PolSetting::H});
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = 1.0;
  CHECK((basis0 - expected).cwiseAbs().maxCoeff() <= 1e-15);

  for (const auto& setting : tomography_settings()) {
    const Eigen::Matrix4cd p = projector(setting);
    CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::abs(p.trace().real() - 1.0) <= 1e-14);
  }
}

TEST_CASE("maximally entangled state probabilities") {
  const auto records = born_probabilities(build_pure_state(bell_spec()));
  CHECK(std::abs(probability_of(records, SpatialSetting::L1, PolSetting::H) -
                 0.5) <= 1e-12);
  CHECK(probability_of(records, SpatialSetting::L1, PolSetting::V) <= 1e-12);
  CHECK(probability_of(records, SpatialSetting::L2, PolSetting::H) <= 1e-12);
  CHECK(std::abs(probability_of(records, SpatialSetting::L2, PolSetting::V) -
                 0.5) <= 1e-12);
  CHECK(std::abs(probability_of(records, SpatialSetting::SupP, PolSetting::D) -
                 0.5) <= 1e-12);
  CHECK(probability_of(records, SpatialSetting::SupP, PolSetting::A) <= 1e-12);
}

TEST_CASE("maximally mixed state is flat") {
  const auto records =
      born_probabilities(Eigen::Matrix4cd::Identity() / 4.0);
  for (const auto& record : records) {
    CHECK(std::abs(record.probability - 0.25) <= 1e-12);
  }
}

TEST_CASE("complete-basis groups sum to one") {
  SplitMix64 gen(99);
  const Eigen::Matrix4cd rho = test_support::random_mixed(gen);
  const auto records = born_probabilities(rho);
  const std::vector<std::pair<SpatialSetting, SpatialSetting>> spatial_bases = {
      {SpatialSetting::L1, SpatialSetting::L2},
      {SpatialSetting::SupP, SpatialSetting::SupM},
      {SpatialSetting::SupPI, SpatialSetting::SupMI}};
  const std::vector<std::pair<PolSetting, PolSetting>> pol_bases = {
      {PolSetting::H, PolSetting::V},
      {PolSetting::D, PolSetting::A},
      {PolSetting::R, PolSetting::L}};
  for (const auto& [a1, a2] : spatial_bases) {
    for (const auto& [b1, b2] : pol_bases) {
      const double sum = probability_of(records, a1, b1) +
                         probability_of(records, a1, b2) +
                         probability_of(records, a2, b1) +
                         probability_of(records, a2, b2);
      CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("probabilities are linear in the state") {
  SplitMix64 gen(7);
  const Eigen::Matrix4cd rho1 = test_support::random_mixed(gen);
  const Eigen::Matrix4cd rho2 = test_support::random_mixed(gen);
  const Eigen::Matrix4cd blend = 0.3 * rho1 + 0.7 * rho2;
  const auto p1 = born_probabilities(rho1);
  const auto p2 = born_probabilities(rho2);
  const auto pb = born_probabilities(blend);
  for (int i = 0; i < 36; ++i) {
    CHECK(std::abs(pb[i].probability -
                   (0.3 * p1[i].probability + 0.7 * p2[i].probability)) <=
          1e-12);
  }
}

TEST_CASE("non-physical states are rejected") {
  CHECK_THROWS_AS(born_probabilities(2.0 * Eigen::Matrix4cd::Identity()),
                  std::invalid_argument);
  Eigen::Matrix4cd negative = Eigen::Matrix4cd::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(born_probabilities(negative), std::invalid_argument);
}

TEST_CASE("count simulation is seed-deterministic") {
  auto records = born_probabilities(build_pure_state(bell_spec()));
  auto twin = records;
  simulate_counts(records, 5000, 1234);
  simulate_counts(twin, 5000, 1234);
  bool identical = true;
  bool any_positive = false;
  for (int i = 0; i < 36; ++i) {
    identical = identical && records[i].counts == twin[i].counts;
    any_positive = any_positive || records[i].counts > 0;
  }
  CHECK(identical);
  CHECK(any_positive);

  auto other = born_probabilities(build_pure_state(bell_spec()));
  simulate_counts(other, 5000, 1235);
  bool differs = false;
  for (int i = 0; i < 36; ++i) differs = differs || other[i].counts != records[i].counts;
  CHECK(differs);
}

TEST_CASE("zero probability never produces counts") {
  for (std::uint64_t seed : {1ULL, 77ULL, 901ULL}) {
    auto records = born_probabilities(build_pure_state(bell_spec()));
    simulate_counts(records, 100000, seed);
    CHECK(counts_of(records, SpatialSetting::L1, PolSetting::V) == 0);
    CHECK(counts_of(records, SpatialSetting::L2, PolSetting::H) == 0);
  }
}

TEST_CASE("empirical frequency concentrates at a million shots") {
  const auto exact = born_probabilities(build_pure_state(bell_spec()));
  constexpr std::uint64_t master = 0x5eed5eed5eed5eedULL ^ 0xf00dULL;
  int in_band = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto records = exact;
    simulate_counts(records, 1000000, derive_stream_seed(master, s));
    const double freq =
        double(counts_of(records, SpatialSetting::L1, PolSetting::H)) / 1e6;
    if (freq >= 0.498 && freq <= 0.502) ++in_band;
  }
  CHECK(in_band >= 99);
}

TEST_CASE("probabilities pass through when no counts are present") {
  const auto records = born_probabilities(build_pure_state(bell_spec()));
  const auto probs = probabilities_from(records);
  for (int i = 0; i < 36; ++i) {
    CHECK(probs[i] == doctest::Approx(records[i].probability).epsilon(1e-14));
  }
}

TEST_CASE("counts renormalize within each complete-basis group") {
  auto records = born_probabilities(build_pure_state(bell_spec()));
  simulate_counts(records, 20000, 5);
  const auto probs = probabilities_from(records);
  const auto settings = tomography_settings();
  // Reconstruct the four group members of the (L1/L2, H/V) block and check
  // they sum to one.
  double group = 0.0;
  for (int i = 0; i < 36; ++i) {
    const bool spatial_z = settings[i].a == SpatialSetting::L1 ||
                           settings[i].a == SpatialSetting::L2;
    const bool pol_z =
        settings[i].b == PolSetting::H || settings[i].b == PolSetting::V;
    if (spatial_z && pol_z) group += probs[i];
  }
  CHECK(std::abs(group - 1.0) <= 1e-12);
}

TEST_CASE("incomplete or degenerate record sets are rejected") {
  auto records = born_probabilities(build_pure_state(bell_spec()));
  auto missing = records;
  missing.pop_back();
  CHECK_THROWS_AS(probabilities_from(missing), std::invalid_argument);

  auto duplicated = records;
  duplicated[1] = duplicated[0];
  CHECK_THROWS_AS(probabilities_from(duplicated), std::invalid_argument);

  auto zeroed = records;
  for (auto& record : zeroed) record.counts = 0;
  CHECK_THROWS_AS(probabilities_from(zeroed), std::invalid_argument);
}

TEST_CASE("setting labels round-trip") {
  for (SpatialSetting s : kSpatialSettings) {
    CHECK(parse_spatial_setting(to_string(s)) == s);
  }
  for (PolSetting p : kPolSettings) {
    CHECK(parse_pol_setting(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_spatial_setting("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pol_setting(""), std::invalid_argument);
}

}  // TEST_SUITE

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "qskyrm/hybrid_state.hpp"
#include "qskyrm/metrics.hpp"
#include "qskyrm/rng.hpp"

#include "test_support.hpp"

using namespace qskyrm;
using test_support::bell_spec;
using test_support::make_spec;

TEST_SUITE("metrics") {

TEST_CASE("fidelity of a state with itself is one") {
  SplitMix64 gen(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix4cd rho = test_support::random_mixed(gen);
    CHECK(std::abs(fidelity(rho, rho) - 1.0) <= 1e-9);
  }
}

TEST_CASE("fidelity is symmetric") {
  SplitMix64 gen(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix4cd a = test_support::random_mixed(gen);
    const Eigen::Matrix4cd b = test_support::random_mixed(gen);
    CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) <= 1e-9);
  }
}

TEST_CASE("overlap of the balanced and fully decayed states") {
  const Eigen::Matrix4cd bell = build_pure_state(bell_spec());
  const Eigen::Matrix4cd product = build_pure_state(make_spec(1, 0, 1.0));
  CHECK(std::abs(fidelity(bell, product) - 0.5) <= 1e-9);
}

TEST_CASE("pure targets reduce fidelity to the overlap") {
  SplitMix64 gen(47);
  const Eigen::Vector4cd psi = pure_state_vector(bell_spec());
  const Eigen::Matrix4cd target = psi * psi.adjoint();
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix4cd rho = test_support::random_mixed(gen);
    const double overlap = (psi.adjoint() * rho * psi)(0, 0).real();
    CHECK(std::abs(fidelity(target, rho) - overlap) <= 1e-9);
  }
}

TEST_CASE("concurrence endpoints") {
  CHECK(std::abs(concurrence(build_pure_state(bell_spec())) - 1.0) <= 1e-12);
  CHECK(concurrence(build_pure_state(make_spec(1, 0, 1.0))) <= 1e-9);
  CHECK(concurrence(Eigen::Matrix4cd::Identity() / 4.0) == 0.0);
}

TEST_CASE("concurrence of the partially decayed family") {
  for (double alpha : {0.75, 0.85, 0.95}) {
    const double expected = 2.0 * alpha * std::sqrt(1.0 - alpha * alpha);
    const Eigen::Matrix4cd rho = build_pure_state(make_spec(1, 0, alpha, 0.7));
    CHECK(std::abs(concurrence(rho) - expected) <= 1e-9);
  }
}

TEST_CASE("purity") {
  CHECK(std::abs(purity(build_pure_state(bell_spec())) - 1.0) <= 1e-12);
  CHECK(std::abs(purity(Eigen::Matrix4cd::Identity() / 4.0) - 0.25) <= 1e-15);
  SplitMix64 gen(53);
  const Eigen::Matrix4cd rho = test_support::random_mixed(gen);
  const Eigen::Matrix4cd mixed = depolarize(rho, 0.5);
  const double direct = (mixed * mixed).trace().real();
  CHECK(std::abs(purity(mixed) - direct) <= 1e-12);
}

TEST_CASE("fidelity to the balanced state tracks the concurrence") {
  for (double gamma : {0.0, 2.1}) {
    const Eigen::Matrix4cd target =
        build_pure_state(make_spec(1, 0, kAlphaMin, gamma));
    for (double alpha : {kAlphaMin, 0.75, 0.85, 0.95, 1.0}) {
      const Eigen::Matrix4cd decayed =
          build_pure_state(make_spec(1, 0, alpha, gamma));
      const double expected = 0.5 * (1.0 + concurrence(decayed));
      CHECK(std::abs(fidelity(target, decayed) - expected) <= 1e-9);
    }
  }
}

TEST_CASE("concurrence is invariant under local rotations") {
  SplitMix64 gen(59);
  const Eigen::Matrix4cd mixed = depolarize(
      build_pure_state(make_spec(1, 0, 0.8, 1.1)), 0.2);
  const Eigen::Matrix4cd pure = build_pure_state(make_spec(1, 0, 0.85));
  const double c_mixed = concurrence(mixed);
  const double c_pure = concurrence(pure);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix4cd u = test_support::kron2(
        test_support::random_unitary2(gen), test_support::random_unitary2(gen));
    CHECK(std::abs(concurrence(u * mixed * u.adjoint()) - c_mixed) <= 1e-8);
    CHECK(std::abs(concurrence(u * pure * u.adjoint()) - c_pure) <= 1e-8);
  }
}

TEST_CASE("white noise degrades fidelity monotonically") {
  const Eigen::Matrix4cd bell = build_pure_state(bell_spec());
  double previous = 2.0;
  for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double f = fidelity(bell, depolarize(bell, lambda));
    CHECK(f < previous);
    previous = f;
  }
  CHECK(std::abs(fidelity(bell, depolarize(bell, 0.0)) - 1.0) <= 1e-9);
  CHECK(std::abs(fidelity(bell, depolarize(bell, 1.0)) - 0.25) <= 1e-9);
}

TEST_CASE("report bundles the three figures") {
  SplitMix64 gen(61);
  const Eigen::Matrix4cd target = build_pure_state(bell_spec());
  const Eigen::Matrix4cd measured = test_support::random_mixed(gen);
  const MetricReport report = metrics_report(target, measured);
  CHECK(report.fidelity == fidelity(target, measured));
  CHECK(report.concurrence == concurrence(measured));
  CHECK(report.purity == purity(measured));
}

TEST_CASE("all figures live in their physical ranges") {
  SplitMix64 gen(67);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix4cd a = test_support::random_mixed(gen);
    const Eigen::Matrix4cd b = test_support::random_mixed(gen);
    const double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    const double c = concurrence(a);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    const double p = purity(a);
    CHECK(p >= 0.25 - 1e-12);
    CHECK(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("non-physical inputs are rejected") {
  const Eigen::Matrix4cd bell = build_pure_state(bell_spec());
  CHECK_THROWS_AS(fidelity(bell, 2.0 * Eigen::Matrix4cd::Identity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(fidelity(2.0 * Eigen::Matrix4cd::Identity(), bell),
                  std::invalid_argument);
  CHECK_THROWS_AS(concurrence(2.0 * Eigen::Matrix4cd::Identity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(purity(2.0 * Eigen::Matrix4cd::Identity()),
                  std::invalid_argument);
}

}  // TEST_SUITE

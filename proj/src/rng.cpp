#include "qskyrm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qskyrm {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGoldenGamma;
  return mix(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_normal() {
  // 1 - u keeps the log argument strictly positive.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

long SplitMix64::next_poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be >= 0 and finite");
  }
  if (mean == 0.0) return 0;
  if (mean <= 16.0) {
    const double limit = std::exp(-mean);
    long k = 0;
    double product = next_unit();
    while (product > limit) {
      ++k;
      product *= next_unit();
    }
    return k;
  }
  const double sample = mean + std::sqrt(mean) * next_normal();
  return sample <= 0.0 ? 0 : std::lround(sample);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix(master + (index + 1) * kGoldenGamma);
}

}  // namespace qskyrm

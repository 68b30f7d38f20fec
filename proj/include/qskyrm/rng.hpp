#pragma once

#include <cstdint>

namespace qskyrm {

// splitmix64: tiny, fully specified, and identical on every platform.  Used
// instead of the std:: distributions because their output sequences are
// implementation-defined and the outputs here must be byte-reproducible from
// a seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform in [0, 1) with 53 random bits.
  double next_unit();

  // Standard normal via Box-Muller (two uniforms per call, no cached spare).
  double next_normal();

  // Poisson sample: Knuth product method for mean <= 16, rounded normal
  // approximation above (mean + sqrt(mean) z, clamped at zero).
  long next_poisson(double mean);

 private:
  std::uint64_t state_;
};

// Per-stream seed for row/replica index under a master seed, using the
// splitmix golden-gamma increment so streams never collide for index < 2^64.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qskyrm

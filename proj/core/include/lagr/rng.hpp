#pragma once

#include <cstdint>
#include <random>

namespace lagr {

// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard,
// and we avoid std distributions (whose output is implementation defined),
// so the same seed gives byte-identical results everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform-ish in [lo, hi], both inclusive. The modulo bias is irrelevant
  // for the sampling done here and keeps the mapping portable.
  long range(long lo, long hi) {
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lagr

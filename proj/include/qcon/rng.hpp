#pragma once

#include <cstdint>

#include "qcon/complex_matrix.hpp"

namespace qcon {

// splitmix64 stream. Self-contained so that streams are reproducible
// bit-for-bit across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller (no caching: one fresh pair member per
  // call keeps the call count -> stream mapping obvious).
  double normal();

  cplx complex_normal() { return cplx{normal(), normal()}; }

  // Derive the sub-stream seed for shard/restart `stream`. A fixed
  // mixing function so shards can run in any order.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Unit vector of dimension n with Haar-uniform direction (normalized
// complex Gaussian).
std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng);

// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phase
// fix, done by modified Gram-Schmidt.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

}  // namespace qcon

#pragma once

#include <cstdint>

namespace xorsat {

// Counter-mode generator built on the splitmix64 finalizer: output i of a
// stream is mix(key + i*PHI). Streams are keyed by (seed, stream id), so the
// draws used for instance sampling, ordering vectors and coin vectors are
// independent given a single master seed, and any draw is reproducible
// without consuming shared state.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream) : key_(derive(seed, stream)), ctr_(0) {}

  uint64_t next_u64() { return mix(key_ + kPhi * ++ctr_); }

  // uniform double in [0,1) with 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound), bound > 0; rejection keeps it unbiased
  uint64_t next_below(uint64_t bound) {
    const uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= lim);
    return x % bound;
  }

  bool next_bit() { return (next_u64() & 1u) != 0; }

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static uint64_t derive(uint64_t seed, uint64_t stream) {
    return mix(seed + kPhi * mix(stream + kPhi));
  }

 private:
  static constexpr uint64_t kPhi = 0x9e3779b97f4a7c15ULL;
  uint64_t key_;
  uint64_t ctr_;
};

// Well-known stream ids. Experiments derive per-trial substreams with
// substream(id, trial) so trials are independent and order-insensitive.
namespace streams {
constexpr uint64_t kInstance = 0x01;
constexpr uint64_t kOrdering = 0x02;   // Z
constexpr uint64_t kInternal = 0x03;   // U (or V)
constexpr uint64_t kInternalAlt = 0x04;  // W
constexpr uint64_t kExtension = 0x05;  // back-substitution coin flips
constexpr uint64_t kSolution = 0x06;   // nullspace sampling
constexpr uint64_t kShuffle = 0x07;    // randomized peel order
constexpr uint64_t kPerturb = 0x08;    // single-entry U perturbations
}  // namespace streams

inline uint64_t substream(uint64_t stream, uint64_t trial) {
  return stream ^ Rng::mix(trial + 1);
}

}  // namespace xorsat

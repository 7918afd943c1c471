#pragma once

// Deterministic, splittable random number generation for experiments.
//
// Every (seed, pattern index, trial index) triple is hashed into an
// independent SplitMix64 stream, so trials can run in any order or on any
// number of threads and still draw identical noise. Gaussian variates come
// from the Marsaglia polar transform rather than std::normal_distribution,
// whose algorithm is implementation-defined and would break the byte-level
// reproducibility contract of the experiment outputs.

#include <cstdint>
#include <cmath>

namespace mhn {

// Fixed-increment SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, range) by rejection.
  uint64_t uniform_below(uint64_t range) {
    // 2^64 mod range; values of next() at or below UINT64_MAX - rem fall
    // into a whole number of buckets.
    const uint64_t rem = (UINT64_MAX % range + 1) % range;
    for (;;) {
      const uint64_t r = next();
      if (rem == 0 || r <= UINT64_MAX - rem) return r % range;
    }
  }

 private:
  uint64_t state_;
};

// Scrambles v through one SplitMix64 step and folds it into h. Used to derive
// independent stream seeds from (seed, indices...).
inline uint64_t hash_combine64(uint64_t h, uint64_t v) {
  SplitMix64 s(v);
  return (h ^ s.next()) * 0x2545F4914F6CDD1Dull;
}

inline uint64_t trial_stream_seed(uint64_t seed, uint64_t pattern_index,
                                  uint64_t trial_index) {
  return hash_combine64(hash_combine64(seed, pattern_index), trial_index);
}

// Standard normal variates via the polar method; pairs are generated
// together and the spare is handed out on the next call.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * rng_.uniform01() - 1.0;
      v = 2.0 * rng_.uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  SplitMix64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mhn

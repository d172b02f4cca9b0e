#pragma once

#include <cmath>
#include <cstdint>

namespace nmqc {

// SplitMix64 (Steele, Lea & Flood, "Fast Splittable Pseudorandom Number
// Generators", OOPSLA 2013; finalizer constants from Vigna's reference
// implementation). The state advances by the golden-ratio increment and
// each output is a mixed copy of the state, so the stream is determined
// by the 64-bit seed alone and replays identically on any platform.
//
// Substreams: worker w draws the (w+1)-th output of SplitMix64(seed) and
// uses it as its own initial state. Single-worker runs are the
// reproducibility reference.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t worker) {
    SplitMix64 parent(seed);
    std::uint64_t state = 0;
    for (std::uint64_t i = 0; i <= worker; ++i) state = parent.next();
    return SplitMix64(state);
  }

  // Exact Poisson sampling via Knuth's product-of-uniforms method,
  // chunked so exp(-lambda) never underflows.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 400.0) {
      total += poisson_small(400.0);
      mean -= 400.0;
    }
    return total + poisson_small(mean);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = uniform();
    while (product > limit) {
      ++k;
      product *= uniform();
    }
    return k;
  }

  std::uint64_t state_;
};

}  // namespace nmqc

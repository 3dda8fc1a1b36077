#pragma once

#include <cstdint>
#include <random>

namespace mvrank {

// Deterministic random source. The raw engine is std::mt19937_64, whose
// output sequence is fixed by the standard, and all conversions to doubles
// are done here rather than with std:: distributions (those are
// implementation-defined). Identical seed => identical stream on every
// platform.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed);

    // Child stream k of this source. Children are independent streams
    // derived from (seed, k) only; spawning them in any order or from a
    // partially consumed parent gives the same streams.
    RandomSource child(std::uint64_t k) const;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform();

    // Uniform on [lo, hi).
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal();

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace mvrank

#include "mvrank/random.hpp"

#include <cmath>
#include <numbers>

namespace mvrank {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

RandomSource RandomSource::child(std::uint64_t k) const {
    return RandomSource(splitmix64(seed_ ^ splitmix64(k + 0x9E3779B97F4A7C15ULL)));
}

std::uint64_t RandomSource::bits() { return engine_(); }

double RandomSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomSource::normal() {
    double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomSource::below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
}

} // namespace mvrank

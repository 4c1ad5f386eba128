#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fqam {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// All randomness in the library flows through explicitly passed Rng instances.
// Independent streams are derived from (seed, index...) so parallel trials are
// reproducible regardless of scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> idx) {
        std::uint64_t s = seed;
        for (std::uint64_t i : idx) s = splitmix64(s ^ (i + 0x6a09e667f3bcc909ull));
        return Rng(s);
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in (0, 1]; never returns 0 so log() is safe.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::size_t below(std::size_t n) {
        // rejection sampling on the top bits
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return static_cast<std::size_t>(v % n);
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(eng_() >> 63); }

    // Standard normal via Box-Muller (no cached state).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = var.
    std::complex<double> cnormal(double var = 1.0) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-var * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    double exponential() { return -std::log(uniform()); }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

} // namespace fqam

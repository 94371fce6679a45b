#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

// Deterministic random streams. The engine is std::mt19937_64 (stable across
// platforms); all variate generation goes through our own transforms because
// the standard library's distribution objects are not implementation-stable.

namespace evidencia {

std::uint64_t mix64(std::uint64_t x);  // SplitMix64 finalizer

// Fold several identifiers into one child seed, order-sensitive.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    double normal();             // inverse-CDF transform
    double chisq(double df);     // via Marsaglia-Tsang gamma
    double gamma(double shape);  // unit scale

  private:
    std::mt19937_64 eng_;
};

} // namespace evidencia

#include "evidencia/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencia/specfun.hpp"

namespace evidencia {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ull;
    for (auto p : parts) h = mix64(h ^ mix64(p));
    return h;
}

double Rng::normal() { return quantile_normal(uniform()); }

// Marsaglia-Tsang (2000) squeeze method; shape < 1 handled by boosting.
double Rng::gamma(double shape) {
    if (shape <= 0.0) throw std::invalid_argument("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::chisq(double df) { return 2.0 * gamma(df / 2.0); }

} // namespace evidencia

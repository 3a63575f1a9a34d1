#pragma once

#include <cstdint>
#include <random>

namespace paracone {

/// Seeded generator with platform-independent uniform draws.
///
/// std::uniform_real_distribution is implementation-defined, so draws are
/// built from the raw 64-bit engine output to keep reports byte-identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace paracone

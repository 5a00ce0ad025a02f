#pragma once

#include <cstdint>
#include <random>

namespace contractum {

/// Seeded generator with platform-independent real draws.
///
/// std::uniform_real_distribution is implementation-defined, so draws are
/// built directly from the 64-bit engine output to keep seeded runs identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace contractum

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace wherald {

/// One reproducible random stream, derived from (master seed, stream index).
/// Streams with distinct indices are independent; a given (seed, stream) pair
/// yields the same draws on every run and platform. Uniform and normal draws
/// are generated from raw engine words, not std::*_distribution, so the
/// bit-exact contract does not depend on the standard library vendor.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();  // 1 - u1 in (0, 1], log is finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wherald

#pragma once

#include <cstdint>
#include <random>

namespace dsgc {

using Rng = std::mt19937_64;

/// Seed of the i-th independent trial or restart derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept { return base + index; }

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dsgc

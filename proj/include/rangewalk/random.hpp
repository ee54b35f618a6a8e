#pragma once

#include <cstdint>
#include <random>

namespace rangewalk {

/// Every stochastic generator draws from this engine.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-trial seed: mix64(master + (trial + 1) * golden_gamma).
/// For a fixed master seed this is a bijection of the trial index.
/// Changing it changes every experiment report.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept
{
    return mix64(master + (trial + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Engine& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace rangewalk

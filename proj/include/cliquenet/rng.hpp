#pragma once

#include <cstdint>
#include <random>

namespace cliquenet {

using Rng = std::mt19937_64;

/// Independent generator for task `index` of stream `stream` under a master
/// seed. Lets parallel or reordered work reproduce the same draws.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Rng(seq);
}

// Stream identifiers used by the experiment harness.
namespace streams {
inline constexpr std::uint64_t dataset = 1;
inline constexpr std::uint64_t encode = 2;
inline constexpr std::uint64_t probe = 3;
} // namespace streams

} // namespace cliquenet

#pragma once

#include <cstdint>

namespace spdp {

/// SplitMix64: the fixed, portable generator behind every seeded construction
/// in this toolkit. Byte-stable across platforms, which is what makes seeded
/// fixtures reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) via the 128-bit multiply reduction.
    /// Deterministic and unbiased enough for fixture generation.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool next_bool() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

} // namespace spdp

#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random number utilities. Every draw is a pure function of
// (key, counter), so streams can be split per sample index and evaluated in
// any order or thread without shared state.

namespace qclmc::rng {

/// Finalizing 64-bit mixer (splitmix64 increment + avalanche).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Combine two words into a well-mixed key.
constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(a) ^ b);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    return mix(mix(a, b), c);
}

/// Map a hash word to a double in [0, 1) with 53-bit resolution.
inline double to_unit(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Map a hash word to a double in (0, 1]; safe as a log() argument.
inline double to_unit_open(std::uint64_t h) noexcept {
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

// Stream tags used to derive per-purpose substreams from a master seed.
// Changing the level sequence of an estimator must not disturb the path
// randomness, so paths and level draws live on separate tags.
inline constexpr std::uint64_t tag_level_sequence = 0x4c45564c53455125ULL;
inline constexpr std::uint64_t tag_path = 0x5041544853545231ULL;
inline constexpr std::uint64_t tag_xi = 0x5849434f45464621ULL;
inline constexpr std::uint64_t tag_step_noise = 0x535445504e4f4953ULL;

/// Sequential N(0,1) stream over a counter (Box-Muller, pair cached).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t key) : key_(key) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = to_unit_open(mix(key_, counter_++));
        const double u2 = to_unit(mix(key_, counter_++));
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qclmc::rng

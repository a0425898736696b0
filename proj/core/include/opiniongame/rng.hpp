#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

namespace opiniongame {

/// Counter-based random stream. Each (seed, step, phase, index) tuple names
/// an independent stream, so interaction outcomes do not depend on the order
/// or thread in which pairs are processed.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t step, std::uint64_t phase,
           std::uint64_t index) {
        state_ = mix(seed ^ 0x9e3779b97f4a7c15ULL);
        state_ = mix(state_ ^ step);
        state_ = mix(state_ ^ (phase * 0xbf58476d1ce4e5b9ULL));
        state_ = mix(state_ ^ (index * 0x94d049bb133111ebULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0,1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [-half_width, half_width].
    double symmetric(double half_width) {
        return (2.0 * uniform01() - 1.0) * half_width;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n). Rejection-free Lemire reduction.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (one value per call, no caching so
    /// draw counts stay explicit).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by an explicit stream, so results are stable
/// across standard library implementations.
inline void shuffle(std::span<std::uint32_t> values, Stream& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[rng.bounded(i)]);
    }
}

}  // namespace opiniongame

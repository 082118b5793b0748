#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace gidlab {

// Deterministic stream RNG: xoshiro256++ seeded from (seed, stream) via
// splitmix64. Identical (seed, stream) pairs reproduce identical draw
// sequences on any platform; distinct streams are statistically independent.
class RngState {
public:
    explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {
        std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        for (auto& w : state_) w = splitmix64(x);
        // avoid the all-zero state (splitmix64 cannot emit four zeros in a
        // row, but keep the guard cheap and explicit)
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on the open interval (0,1); safe under log()
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // exponential(1)
    double exponential() { return -std::log(uniform()); }

    // standard normal, Box-Muller with cached spare
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gidlab

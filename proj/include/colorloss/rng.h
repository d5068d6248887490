#pragma once

#include <cstdint>

namespace colorloss {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream seed for item `index` under `master`. Pure function of its inputs,
// so work items can be seeded in any order.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master;
    uint64_t a = splitmix64(s);
    s = a ^ (index * 0xD1B54A32D192ED03ull);
    splitmix64(s);
    return splitmix64(s);
}

inline uint64_t derive_seed(uint64_t master, uint64_t i, uint64_t j) {
    return derive_seed(derive_seed(master, i), j);
}

// xoshiro256** seeded through splitmix64.
class Rng {
  public:
    explicit Rng(uint64_t seed = 0) {
        uint64_t s = seed;
        for (auto& x : s_) x = splitmix64(s);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * n;
            if (static_cast<uint64_t>(m) >= threshold) return static_cast<uint64_t>(m >> 64);
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace colorloss

#pragma once

#include <cstdint>

namespace wbl {

// Counter-style splitmix64 stream. One instance per match/trial so that
// results are reproducible regardless of scheduling.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Lemire-style rejection.
    uint64_t below(uint64_t bound) {
        uint64_t x = next();
        __uint128_t m = (__uint128_t)x * bound;
        uint64_t lo = (uint64_t)m;
        if (lo < bound) {
            uint64_t t = -bound % bound;
            while (lo < t) {
                x = next();
                m = (__uint128_t)x * bound;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    int below_int(int bound) { return (int)below((uint64_t)bound); }

    // One draw per coin; compares against p scaled to 2^64.
    bool coin(double p) {
        if (p <= 0.0) { next(); return false; }
        if (p >= 1.0) { next(); return true; }
        return next() < (uint64_t)(p * 18446744073709551616.0);
    }

    double uniform01() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    uint64_t state_;
};

// Derives independent per-role streams from a match seed.
inline uint64_t derive_seed(uint64_t base, uint64_t salt) {
    Rng r(base ^ (0xa5a5a5a5deadbeefULL * (salt + 1)));
    return r.next();
}

} // namespace wbl

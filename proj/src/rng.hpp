#pragma once

#include <cstdint>

namespace nbldpc {

// Counter-based RNG built on splitmix64. Streams are derived by hashing
// (seed, stream ids...) so results do not depend on thread scheduling or
// evaluation order.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix64(seed)) {}
    Rng(uint64_t seed, uint64_t stream) : state_(splitmix64(hash_combine(seed, stream))) {}
    Rng(uint64_t seed, uint64_t s1, uint64_t s2)
        : state_(splitmix64(hash_combine(hash_combine(seed, s1), s2))) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }

    // uniform in [0, 1)
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double prob) { return uniform() < prob; }

private:
    uint64_t state_;
};

}  // namespace nbldpc

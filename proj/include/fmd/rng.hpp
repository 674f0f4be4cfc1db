// Counter-based deterministic RNG: each draw is a pure function of
// (seed, counter), so sampling loops can be split across threads without
// changing the stream.
#pragma once

#include <cmath>
#include <cstdint>

namespace fmd {

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct CounterRng {
    uint64_t seed = 1;
    uint64_t counter = 0;

    explicit CounterRng(uint64_t s = 1) : seed(s) {}

    uint64_t next_u64() { return splitmix64(seed ^ splitmix64(counter++)); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // standard normal (Box-Muller, one value per call pair kept simple)
    double normal() {
        double u1 = next_double(), u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    uint64_t below(uint64_t n) { return next_u64() % n; }
};

}  // namespace fmd

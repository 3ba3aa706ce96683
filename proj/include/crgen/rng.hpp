#pragma once

#include <cmath>
#include <cstdint>

namespace crgen {

// SplitMix64 step; used only to expand seed material into engine state.
inline uint64_t splitmix64_next(uint64_t& s) {
    uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ keyed by (root seed, stream id, counter). Every random draw in
// the project is attributable to such a triple, so parallel trials reproduce
// bit-identically regardless of scheduling.
class Xoshiro256pp {
  public:
    Xoshiro256pp(uint64_t root_seed, uint64_t stream_id = 0, uint64_t counter = 0) {
        uint64_t s = root_seed;
        s ^= 0xA0761D6478BD642FULL * (stream_id + 1);
        s ^= 0xE7037ED1A0B428DBULL * (counter + 1);
        for (auto& w : state_) w = splitmix64_next(s);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0,1); never returns exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform in (-1,1).
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Marsaglia's polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform_sym();
            v = uniform_sym();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Uniform integer in [0, bound) without modulo bias.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = -bound % bound;
        for (;;) {
            const uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace crgen

#ifndef RRG_RNG_HPP
#define RRG_RNG_HPP

#include <cstdint>

namespace rrg {

// Splittable counter-based generator. A stream is identified by
// (master seed, stream id); its output is a pure function of that pair and
// the call counter, so any worker layout produces identical draws.
// Core mixer is the splitmix64 finalizer over a Weyl sequence.
class SplitRng {
  public:
    SplitRng(uint64_t seed, uint64_t stream)
        : state_(mix(mix(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, bound); bound > 0. Unbiased via rejection.
    uint64_t next_below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1), 53 bits.
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
};

} // namespace rrg

#endif

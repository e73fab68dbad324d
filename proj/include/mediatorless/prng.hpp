#pragma once

#include <cstdint>
#include <random>

namespace mediatorless {

// Deterministic per-run randomness. Bounded draws use rejection sampling on
// the raw 64-bit stream so results are identical across platforms
// (uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (gen_() & 1) != 0; }

    // Derives an independent stream; used to give each simulated player its
    // own reproducible source from the run seed.
    Rng fork(std::uint64_t salt) {
        std::uint64_t s = next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL);
        return Rng(s);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mediatorless

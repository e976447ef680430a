#pragma once

#include <cstdint>

namespace dgs {

// 64-bit linear congruential generator (Knuth's MMIX constants). All random
// inputs in the library, the CLI and the test suites come from this one
// generator so a seed reproduces a run bit-for-bit on any platform.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // uniform in [0,1), 53 bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [-1,1)
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    // uniform in [lo,hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // uniform in {0,...,n-1}; uses the high bits (low LCG bits have short periods)
    int next_int(int n) {
        return static_cast<int>((next_u64() >> 33) % static_cast<std::uint64_t>(n));
    }

private:
    std::uint64_t state_;
};

}  // namespace dgs

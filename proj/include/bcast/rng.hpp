#pragma once

#include <cstdint>
#include <limits>

namespace bcast {

// SplitMix64 stream whose starting point is a hash of (seed, stream index), so
// replication i draws the same numbers no matter which thread runs it.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed + mix(stream + 0x632BE59BD9B4E019ull))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform on [0,1) with 53 random bits
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v;
        do v = (*this)();
        while (v >= limit);
        return v % bound;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace bcast

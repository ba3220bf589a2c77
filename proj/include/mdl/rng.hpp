#pragma once
#include <cstdint>

namespace mdl {

// Counter-based pseudorandom stream (splitmix64). The standard-library
// engines are portable but the distributions are not, so both the state
// transition and the double conversion live here. Identical
// (seed, stream, draw sequence) yields identical outputs on any platform.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(uint64_t seed, uint64_t stream)
        : seed_(seed), stream_(stream), state_(derive_state(seed, stream)) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be >= 1. Rejection-free modulo of a
    // 64-bit draw is biased by < 2^-40 for the small n used here; we keep the
    // unbiased widening-multiply trick anyway since it is branch-free.
    uint64_t next_below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    // Derived stream, independent of this stream's position.
    RngStream child(uint64_t tag) const {
        return RngStream(mix(seed_ ^ mix(stream_ + 0x5851F42D4C957F2Dull)), tag);
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    static uint64_t derive_state(uint64_t seed, uint64_t stream) {
        return mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t state_;
};

} // namespace mdl

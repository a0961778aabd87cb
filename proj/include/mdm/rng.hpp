#pragma once

#include <cstdint>

namespace mdm {

// 64-bit finalizer (SplitMix64 / MurmurHash3 constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based generator: output i is mix64(key + i*phi64), so the sequence
// is a pure function of (key, i). stream(id) derives an independent child key,
// which lets every sampled object own its own reproducible stream regardless
// of evaluation order or thread count.
class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t seed) : key_(mix64(seed ^ 0x8f1bbcdcbfa53e0bULL)) {}

    RngStream stream(std::uint64_t id) const {
        RngStream child;
        child.key_ = mix64(key_ ^ mix64(id + 0x9e3779b97f4a7c15ULL));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ + counter_);
    }

    // Uniform in [0,1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1]; safe as argument of log().
    double next_unit_positive() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Lemire multiply-shift.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace mdm

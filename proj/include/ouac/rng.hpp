#pragma once

#include <cmath>
#include <cstdint>

namespace ouac {

// Splittable counter-based stream (splitmix64 core). Two streams built from
// the same seed and split path produce identical draws, which is what makes
// batches reproducible independently of thread placement.
class RngStream {
public:
    static RngStream from_seed(uint64_t seed) { return RngStream(mix(seed ^ kRoot)); }

    // Child stream derived from this stream's identity and the given key;
    // does not advance this stream.
    RngStream split(uint64_t key) const {
        return RngStream(mix(key_ ^ mix(key + kSplit)));
    }

    uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1].
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    uint64_t below(uint64_t n) { return next_u64() % n; }

private:
    explicit RngStream(uint64_t key) : key_(key) {}

    static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr uint64_t kRoot = 0x5851F42D4C957F2DULL;
    static constexpr uint64_t kSplit = 0xD1B54A32D192ED03ULL;

    static uint64_t mix(uint64_t x) {
        x += kGolden;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    uint64_t key_;
    uint64_t counter_ = 0;
};

} // namespace ouac

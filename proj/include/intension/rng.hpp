#pragma once

#include <cstdint>
#include <string_view>

namespace intension {

// Explicit random stream: splitmix64 with the golden-gamma increment.
// All sampling in the project threads one of these; there is no global
// generator state, so identical seeds give identical draws everywhere.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound), bound >= 1, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// splitmix64 finalizer; full 64-bit avalanche.
inline std::uint64_t avalanche64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Derives a trial seed from experiment coordinates. Chained splitmix64
// finalizers with distinct odd constants per slot, so nearby coordinates
// land on unrelated streams.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t task_hash,
                              std::uint64_t m, std::uint64_t trial) {
    std::uint64_t h = avalanche64(master + 0x9E3779B97F4A7C15ull);
    h = avalanche64(h ^ (task_hash + 0xBF58476D1CE4E5B9ull));
    h = avalanche64(h ^ (m + 0x94D049BB133111EBull));
    h = avalanche64(h ^ (trial + 0xD6E8FEB86659FD93ull));
    return h;
}

} // namespace intension

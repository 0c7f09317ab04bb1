#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fkvx {

// SplitMix64 finalizer; used only to derive well-separated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    return splitmix64(master_seed ^ splitmix64(stream_index + 1));
}

// One normal stream per path index, derived from the master seed. Streams are
// independent of scheduling, so parallel workers and common-random-number
// reuse across starting points both reproduce the same draws.
class NormalStream {
public:
    NormalStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : engine_(stream_seed(master_seed, stream_index)) {}

    double next() { return normal_(engine_); }

    void fill(std::span<double> out) {
        for (double& z : out)
            z = normal_(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace fkvx

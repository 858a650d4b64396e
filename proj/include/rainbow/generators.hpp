#ifndef RAINBOW_GENERATORS_HPP
#define RAINBOW_GENERATORS_HPP

#include <cstdint>

#include "rainbow/core.hpp"

// Seeded random instance generation. All randomness flows through a
// splitmix64 stream so that families are reproducible bit-for-bit across
// platforms and languages; the stream is pinned by test vectors. Families
// are generated by deletion from the complete bipartite graph, which keeps
// the degree thresholds satisfiable at every step.

namespace rainbow::gen {

// splitmix64: state advances by the golden-gamma constant, output is the
// mixed state. Reference outputs from seed 0:
//   e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish value in [0, bound) via modulo; bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

/// Per-trial seed derivation: one splitmix64 output of (seed xor trial).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed ^ trial).next();
}

struct GenSpec {
    int n{2};
    int graph_count{4};
    int slack{0};  // extra degree to keep above the thresholds, capped at n
    std::uint64_t seed{0};
};

// Starts every graph complete, visits its edges once in seeded random
// order (one stream for the whole family, graphs in index order,
// Fisher-Yates shuffle per graph), and deletes an edge iff both endpoint
// degrees stay at or above threshold + slack. The result always passes
// validate_family for the role implied by graph_count.
BipartiteFamily random_valid_family(const GenSpec& spec);

// A valid family damaged at exactly one spot: one vertex in one graph ends
// one edge below its threshold; everything else passes. n = 2 is rejected.
BipartiteFamily random_near_miss_family(const GenSpec& spec);

}  // namespace rainbow::gen

#endif

#ifndef RAINBOW_ORACLE_HPP
#define RAINBOW_ORACLE_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>

#include "rainbow/core.hpp"

// Exact, complete backtracking search for rainbow structures. Searches are
// vertex-sequence-first: the wider color choice is delegated to an
// incrementally maintained bipartite matching between placed edges and
// graph indices, which prunes exactly (a partial sequence survives iff its
// edges still admit an injective coloring). `None` is therefore a sound
// non-existence claim; `BudgetExhausted` claims nothing.
//
// Families need not meet any degree condition; the searches also run on
// counterexample constructions. Graph counts above 64 are rejected.

namespace rainbow::oracle {

struct SearchBudget {
    std::uint64_t max_nodes{std::numeric_limits<std::uint64_t>::max()};
    std::chrono::milliseconds time_limit{std::chrono::milliseconds::max()};

    static SearchBudget unlimited() { return {}; }
    static SearchBudget nodes(std::uint64_t n) { return {n, std::chrono::milliseconds::max()}; }
};

enum class SearchStatus { Found, None, BudgetExhausted };

struct SearchResult {
    SearchStatus status{SearchStatus::None};
    std::optional<RainbowSubgraph> witness;
    std::uint64_t nodes{0};

    bool found() const { return status == SearchStatus::Found; }
};

// Rainbow cycle of exactly `length` vertices (even, 4 <= length <= 2n).
// Witnesses are canonical: lowest blue vertex first, oriented toward its
// smaller red neighbor. Throws std::invalid_argument on a bad length.
SearchResult find_rainbow_cycle(const BipartiteFamily& family, int length,
                                const SearchBudget& budget = SearchBudget::unlimited());

/// Rainbow cycle through all 2n vertices.
SearchResult find_rainbow_hamiltonian(const BipartiteFamily& family,
                                      const SearchBudget& budget = SearchBudget::unlimited());

/// Rainbow path through all 2n vertices (2n - 1 edges, injective colors).
SearchResult find_rainbow_hamiltonian_path(const BipartiteFamily& family,
                                           const SearchBudget& budget = SearchBudget::unlimited());

/// n vertex-disjoint edges with injective colors (bijective when s = n).
SearchResult find_rainbow_perfect_matching(const BipartiteFamily& family,
                                           const SearchBudget& budget = SearchBudget::unlimited());

// Number of distinct rainbow cycles of the given length, counting each
// (canonical cycle, color assignment) pair once, truncated at `cap`.
long long count_rainbow_cycles(const BipartiteFamily& family, int length, long long cap);

}  // namespace rainbow::oracle

#endif

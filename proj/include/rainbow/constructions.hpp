#ifndef RAINBOW_CONSTRUCTIONS_HPP
#define RAINBOW_CONSTRUCTIONS_HPP

#include "rainbow/core.hpp"

// Deterministic builders for the extremal instances that show the degree
// thresholds are sharp, plus trivial baselines. Part assignments use
// contiguous index ranges so that repeated runs serialize identically.

namespace rainbow {

/// s copies of the complete bipartite graph on 2n vertices.
BipartiteFamily complete_family(int n, int s);

// 2n identical copies of the disjoint union of two complete bipartite
// blocks {p_1..p_{n/2}} x {q_1..q_{n/2}} and the complementary ranges.
// Every degree is exactly n/2 (one below the strict red threshold), and no
// rainbow Hamiltonian cycle exists. Requires n even, n >= 4.
BipartiteFamily two_blocks_family(int n);

// n graphs on red parts A = q_1..q_ceil(n/2), B = rest and blue parts
// C = p_1..p_ceil(n/2), D = rest. Graphs 1..n-1 are complete on (A,C) and
// (B,D); graph n is complete on (A,D) and (B,C). Minimum degree n/2 for
// even n, (n-1)/2 for odd n, and no rainbow perfect matching exists.
BipartiteFamily pm_blocks_family(int n);

// n = 3; six identical copies of the 6-cycle p1 q1 p2 q2 p3 q3. Meets both
// degree thresholds yet admits no rainbow 4-cycle.
BipartiteFamily hexagon_family();

/// s identical copies of the given edge set. Invalid edges are rejected.
BipartiteFamily identical_family(const std::vector<Edge>& edges, int n, int s);

}  // namespace rainbow

#endif

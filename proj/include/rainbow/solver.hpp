#ifndef RAINBOW_SOLVER_HPP
#define RAINBOW_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/oracle.hpp"

// Proof-guided heuristic search. Each operation reifies one constructive
// step of the underlying existence arguments as a move: Posa-style path
// rotation, cycle extension, auxiliary-digraph closure, chord-based cycle
// shortening, shift-set closing and Bondy pairings for prescribed lengths,
// and matching swaps. Moves search their pattern space and either return a
// verified witness / successor state or report no_move; no_move never
// claims non-existence. The solve() pipeline chains moves and can fall
// back to the exact oracle on a stall.

namespace rainbow::solver {

/// Directed pattern graph over the labeled structure: an arc leaves each
/// red cycle vertex through the graph whose color sits on its outgoing
/// cycle edge (successor excluded); in the matching variant, arcs leave a
/// matched red vertex through its own edge's graph toward every blue
/// vertex except its partner.
class AuxiliaryDigraph {
  public:
    void add_arc(VertexId from, VertexId to);
    bool has_arc(VertexId from, VertexId to) const;
    int out_degree(VertexId v) const;
    int in_degree(VertexId v) const;
    std::vector<VertexId> in_neighbors(VertexId v) const;
    std::vector<VertexId> out_neighbors(VertexId v) const;
    const std::vector<std::pair<VertexId, VertexId>>& arcs() const { return arcs_; }

  private:
    std::vector<std::pair<VertexId, VertexId>> arcs_;
};

// A rainbow cycle in working coordinates: cycle[0] is blue and positions
// alternate, color(i) colors the edge (cycle[i-1], cycle[i mod L]) using
// 1-based circular positions. The optional pendant is a single rainbow
// edge disjoint from the cycle; outside lists the remaining vertices.
struct LabeledCycleState {
    std::vector<VertexId> cycle;
    std::vector<int> cycle_colors;
    std::optional<ColoredEdge> pendant;
    std::vector<VertexId> outside;
    std::vector<int> missing_colors;  // ascending

    int length() const { return static_cast<int>(cycle.size()); }
    VertexId vertex(int pos) const;  // 1-based circular
    int color(int pos) const;        // color of edge (v_pos, v_pos+1)
    RainbowSubgraph cycle_subgraph() const;
    std::optional<VertexId> pendant_red() const;
    std::optional<VertexId> pendant_blue() const;
};

/// Builds the working state for a verified rainbow cycle, canonicalizing
/// rotation and orientation; missing colors and outside vertices are
/// derived from the family. Throws std::invalid_argument if `sub` does not
/// verify or is not a cycle.
LabeledCycleState relabel_to_canonical(const RainbowSubgraph& sub, const BipartiteFamily& family);

/// As above with a pendant edge (vertex-disjoint from the cycle).
LabeledCycleState make_state(const RainbowSubgraph& cycle, std::optional<ColoredEdge> pendant,
                             const BipartiteFamily& family);

enum class MoveKind { NoMove, Witness, State };

struct MoveOutcome {
    MoveKind kind{MoveKind::NoMove};
    std::optional<RainbowSubgraph> witness;
    std::optional<LabeledCycleState> state;

    static MoveOutcome no_move() { return {}; }
    static MoveOutcome with_witness(RainbowSubgraph w);
    static MoveOutcome with_state(LabeledCycleState s);
};

// Re-assigns the color of cycle edge `position` to `new_color`. When
// new_color is missing this is a plain recoloring; when another cycle edge
// holds it, the two edges swap colors (both memberships are checked).
// Returns no_move when the exchange is impossible.
MoveOutcome recolor_edge(const LabeledCycleState& state, const BipartiteFamily& family,
                         int position, int new_color);

/// Auxiliary digraph of a cycle state (with arcs into the pendant blue
/// vertex when a pendant is present).
AuxiliaryDigraph build_auxiliary_digraph(const LabeledCycleState& state,
                                         const BipartiteFamily& family);

/// Matching variant: `near_matching` must be a verified rainbow matching.
AuxiliaryDigraph build_auxiliary_digraph(const RainbowSubgraph& near_matching,
                                         const BipartiteFamily& family);

// Closes a (2n-2)-cycle + pendant state into a rainbow Hamiltonian cycle.
// Tries, in order: pendant insertion patterns guided by arcs into the
// pendant blue vertex; rotation-and-closure through every blue cycle
// vertex; and the mirrored closure through the pendant endpoints.
MoveOutcome close_hamiltonian(const LabeledCycleState& state, const BipartiteFamily& family);

// Posa rotation on a rainbow Hamiltonian path: closes it into a
// Hamiltonian cycle outright when a closing edge exists in a missing
// color, otherwise rotates one end to produce a (2n-2)-cycle + pendant
// state via the pigeonhole chord pair.
MoveOutcome rotate_path(const RainbowSubgraph& path, const BipartiteFamily& family);

// From a bare (2n-2)-cycle with two vertices outside: either attach the
// outside pair as a pendant (missing-color edge) or route a Hamiltonian
// path between the outside vertices through a cycle chord.
MoveOutcome extend_cycle(const RainbowSubgraph& cycle, const BipartiteFamily& family);

// From a full 2n-cycle state, produce a rainbow cycle of length 2n-2 via
// digraph chords; when only the skip-four chord fires, repairs the
// resulting (2n-4)-cycle + pendant by reinserting outside vertices (small
// fixed shapes at n = 4, insertion patterns at n >= 5).
MoveOutcome shorten_cycle(const LabeledCycleState& state, const BipartiteFamily& family);

// From a (2n-2)-cycle state with outside vertices {x, y}: looks for a
// length-l cycle through x using neighbor sets shifted by l-2, or through
// x and y using the shift l-3 together with an xy edge in a spare color.
MoveOutcome find_cycle_by_shift_sets(const LabeledCycleState& state, const BipartiteFamily& family,
                                     int length);

// All length-l cycles obtainable from chord pairings at cycle edge j: the
// chord at v_j pairs with the chord at v_j+1 landing l-3 (or l-1 when the
// window covers j) positions back, one chord per missing color. Every
// returned cycle is verified.
std::vector<RainbowSubgraph> bondy_pairing_moves(const LabeledCycleState& state,
                                                 const BipartiteFamily& family, int length,
                                                 int j);

// Completes a near-perfect rainbow matching (n-1 edges) using the missing
// color: a direct swap through the unmatched pair, then two-pair swap
// chains through the auxiliary digraph.
MoveOutcome pm_swap(const RainbowSubgraph& matching, const BipartiteFamily& family);

struct Target {
    enum class Kind { Hamiltonian, Cycle, PerfectMatching };
    Kind kind{Kind::Hamiltonian};
    int length{0};  // for Kind::Cycle

    static Target hamiltonian() { return {Kind::Hamiltonian, 0}; }
    static Target cycle(int length) { return {Kind::Cycle, length}; }
    static Target perfect_matching() { return {Kind::PerfectMatching, 0}; }
};

struct MoveStats {
    std::uint64_t restarts{0};
    std::uint64_t rotate_calls{0};
    std::uint64_t extend_calls{0};
    std::uint64_t close_calls{0};
    std::uint64_t shorten_calls{0};
    std::uint64_t shift_calls{0};
    std::uint64_t bondy_calls{0};
    std::uint64_t pm_swap_calls{0};
    std::uint64_t greedy_nodes{0};
    std::string stall_kind;  // shape the pipeline was stuck in, when stalled
};

/// Observer for tests: collects every cycle+pendant state the pipeline
/// builds.
struct SolveTrace {
    std::vector<LabeledCycleState> states;
};

enum class SolveStatus { Found, None, Stalled, BudgetExhausted };

struct SolveResult {
    SolveStatus status{SolveStatus::Stalled};
    std::optional<RainbowSubgraph> witness;
    MoveStats stats;
    bool used_fallback{false};
    std::uint64_t oracle_nodes{0};

    bool found() const { return status == SolveStatus::Found; }
};

// Move pipeline with optional oracle fallback. Witnesses are always
// verified before being returned. With fallback=false a stall is reported
// as Stalled together with move statistics; None is only ever produced by
// the complete oracle. The seed drives the greedy initial structures.
SolveResult solve(const BipartiteFamily& family, Target target,
                  const oracle::SearchBudget& budget = oracle::SearchBudget::unlimited(),
                  bool fallback = true, std::uint64_t seed = 0, SolveTrace* trace = nullptr);

}  // namespace rainbow::solver

#endif

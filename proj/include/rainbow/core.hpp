#ifndef RAINBOW_CORE_HPP
#define RAINBOW_CORE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

// Core domain model: balanced bipartite graph families on a shared vertex
// set, and rainbow (transversal) subgraphs over them. A family consists of
// n blue vertices p_1..p_n, n red vertices q_1..q_n, and s bipartite graphs
// on that vertex set. A rainbow subgraph is an edge set together with an
// injective assignment of edges to graph indices ("colors").
//
// Everything here is immutable after construction and safe for concurrent
// reads.

namespace rainbow {

enum class VertexClass : std::uint8_t { Blue = 0, Red = 1 };

struct VertexId {
    VertexClass cls{VertexClass::Blue};
    int index{1};  // 1-based, in [1, n]

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline VertexId blue(int index) { return VertexId{VertexClass::Blue, index}; }
inline VertexId red(int index) { return VertexId{VertexClass::Red, index}; }

/// "p3" for blue 3, "q5" for red 5.
std::string to_string(VertexId v);

/// An edge always joins a blue vertex to a red vertex; both 1-based.
struct Edge {
    int blue{0};
    int red{0};

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ColoredEdge {
    Edge edge;
    int color{0};  // 1-based graph index

    friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

// A family of s bipartite graphs on the common 2n-vertex set. Construction
// never throws on bad edge data; problems (out-of-range endpoints,
// duplicate edges) are collected into structural_errors() so that callers
// such as validate_family can report them instead of crashing. Offending
// edges are dropped from the adjacency structure.
class BipartiteFamily {
  public:
    // `graphs[i]` holds the edges of graph i+1. n must be in [1, 64].
    BipartiteFamily(int n, std::vector<std::vector<Edge>> graphs);

    int n() const { return n_; }
    int graph_count() const { return static_cast<int>(adjacency_blue_.size()); }

    bool has_edge(int graph, int blue, int red) const {
        return (adjacency_blue_[graph - 1][blue - 1] >> (red - 1)) & 1u;
    }
    bool has_edge(int graph, Edge e) const { return has_edge(graph, e.blue, e.red); }

    /// Bitmask of red neighbors of p_blue in the given graph (bit r-1 = q_r).
    std::uint64_t blue_adjacency(int graph, int blue) const {
        return adjacency_blue_[graph - 1][blue - 1];
    }
    /// Bitmask of blue neighbors of q_red in the given graph (bit b-1 = p_b).
    std::uint64_t red_adjacency(int graph, int red) const {
        return adjacency_red_[graph - 1][red - 1];
    }

    int blue_degree(int graph, int blue) const;
    int red_degree(int graph, int red) const;

    /// Edges of one graph, sorted ascending (blue index, then red index),
    /// duplicates and out-of-range entries removed.
    std::vector<Edge> edges(int graph) const;
    int edge_count(int graph) const;

    const std::vector<std::string>& structural_errors() const { return structural_errors_; }
    bool structurally_sound() const { return structural_errors_.empty(); }

    friend bool operator==(const BipartiteFamily& a, const BipartiteFamily& b) {
        return a.n_ == b.n_ && a.adjacency_blue_ == b.adjacency_blue_;
    }

  private:
    int n_;
    // adjacency_*_[g][v] are bitmasks over the opposite class.
    std::vector<std::vector<std::uint64_t>> adjacency_blue_;
    std::vector<std::vector<std::uint64_t>> adjacency_red_;
    std::vector<std::string> structural_errors_;
};

enum class FamilyRole { CycleFamily, MatchingFamily };

struct DegreeThresholds {
    int red_min{0};   // least integer degree with d > n/2
    int blue_min{0};  // least integer degree with d >= n/2

    friend bool operator==(const DegreeThresholds&, const DegreeThresholds&) = default;
};

/// Minimum integer degrees satisfying the strict (red) and weak (blue)
/// half-order bounds: red_min = floor(n/2)+1, blue_min = ceil(n/2).
DegreeThresholds degree_thresholds(int n);

struct GraphDegreeSummary {
    int min_red_degree{0};
    int min_blue_degree{0};
};

struct DegreeViolation {
    int graph{0};
    VertexId vertex;
    int degree{0};
    int required{0};
};

struct ValidationReport {
    FamilyRole role{FamilyRole::CycleFamily};
    DegreeThresholds thresholds;
    std::vector<GraphDegreeSummary> per_graph;
    std::vector<DegreeViolation> violations;
    std::vector<std::string> structural_errors;
    std::vector<std::string> role_errors;  // wrong graph count, n too small for cycles

    bool pass() const {
        return structural_errors.empty() && role_errors.empty() && violations.empty();
    }
};

// Checks degree thresholds and graph count for the given role. Cycle
// families need 2n graphs and n >= 2 (no even cycle exists below that);
// matching families need n graphs. Bipartiteness is guaranteed by the edge
// representation, so it is not rechecked here.
ValidationReport validate_family(const BipartiteFamily& family, FamilyRole role);

enum class SubgraphKind { Path, Cycle, Matching };

// An edge set with an injective edge -> graph-index assignment. For kind
// Cycle the edges are listed in cyclic order (edge i shares a vertex with
// edge i+1, last wraps to first); for Path in path order; for Matching in
// any order. The witness assignment is stored explicitly: a structure
// without its colors is not a rainbow subgraph.
struct RainbowSubgraph {
    SubgraphKind kind{SubgraphKind::Matching};
    std::vector<ColoredEdge> edges;

    friend bool operator==(const RainbowSubgraph&, const RainbowSubgraph&) = default;
};

struct VerifyResult {
    bool ok{false};
    std::vector<std::string> reasons;

    explicit operator bool() const { return ok; }
};

// Ground-truth acceptor: true iff `sub` is a well-shaped path / cycle /
// matching, its colors are injective, and every edge belongs to the graph
// its color names. Never throws; failures come back as reason strings.
VerifyResult verify_rainbow(const RainbowSubgraph& sub, const BipartiteFamily& family);

// Vertex sequence of a path or cycle subgraph, derived from the ordered
// edge list. For a cycle of length L the result has L entries (the closing
// edge is implicit); for a path, edge-count + 1 entries. Throws
// std::invalid_argument when the edges do not form a chain.
std::vector<VertexId> vertex_sequence(const RainbowSubgraph& sub);

// Deterministic normal form. Cycles are rotated so the lowest-index blue
// vertex comes first and oriented toward its smaller red neighbor; paths
// are oriented with the lexicographically smaller endpoint sequence first;
// matchings are sorted by blue index. Colors travel with their edges.
RainbowSubgraph canonicalize(const RainbowSubgraph& sub);

}  // namespace rainbow

#endif

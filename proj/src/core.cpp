#include "rainbow/core.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace rainbow {

std::string to_string(VertexId v) {
    return (v.cls == VertexClass::Blue ? "p" : "q") + std::to_string(v.index);
}

BipartiteFamily::BipartiteFamily(int n, std::vector<std::vector<Edge>> graphs) : n_(n) {
    if (n < 1 || n > 64) throw std::invalid_argument("family size n must be in [1, 64]");
    const int s = static_cast<int>(graphs.size());
    adjacency_blue_.assign(s, std::vector<std::uint64_t>(n, 0));
    adjacency_red_.assign(s, std::vector<std::uint64_t>(n, 0));
    for (int g = 0; g < s; ++g) {
        for (const Edge& e : graphs[g]) {
            if (e.blue < 1 || e.blue > n || e.red < 1 || e.red > n) {
                structural_errors_.push_back("graph " + std::to_string(g + 1) +
                                             ": edge endpoint out of range (p" +
                                             std::to_string(e.blue) + ", q" +
                                             std::to_string(e.red) + ")");
                continue;
            }
            if ((adjacency_blue_[g][e.blue - 1] >> (e.red - 1)) & 1u) {
                structural_errors_.push_back("graph " + std::to_string(g + 1) +
                                             ": duplicate edge p" + std::to_string(e.blue) +
                                             " q" + std::to_string(e.red));
                continue;
            }
            adjacency_blue_[g][e.blue - 1] |= std::uint64_t{1} << (e.red - 1);
            adjacency_red_[g][e.red - 1] |= std::uint64_t{1} << (e.blue - 1);
        }
    }
}

int BipartiteFamily::blue_degree(int graph, int blue) const {
    return std::popcount(adjacency_blue_[graph - 1][blue - 1]);
}

int BipartiteFamily::red_degree(int graph, int red) const {
    return std::popcount(adjacency_red_[graph - 1][red - 1]);
}

std::vector<Edge> BipartiteFamily::edges(int graph) const {
    std::vector<Edge> out;
    for (int b = 1; b <= n_; ++b) {
        std::uint64_t mask = adjacency_blue_[graph - 1][b - 1];
        while (mask) {
            int r = std::countr_zero(mask) + 1;
            mask &= mask - 1;
            out.push_back(Edge{b, r});
        }
    }
    return out;
}

int BipartiteFamily::edge_count(int graph) const {
    int total = 0;
    for (int b = 1; b <= n_; ++b) total += blue_degree(graph, b);
    return total;
}

DegreeThresholds degree_thresholds(int n) {
    if (n < 1) throw std::invalid_argument("degree_thresholds: n must be >= 1");
    return DegreeThresholds{n / 2 + 1, (n + 1) / 2};
}

ValidationReport validate_family(const BipartiteFamily& family, FamilyRole role) {
    ValidationReport report;
    report.role = role;
    report.thresholds = degree_thresholds(family.n());
    report.structural_errors = family.structural_errors();

    const int n = family.n();
    const int s = family.graph_count();
    const int expected = role == FamilyRole::CycleFamily ? 2 * n : n;
    if (s != expected) {
        report.role_errors.push_back(
            (role == FamilyRole::CycleFamily ? std::string("cycle-family requires 2n = ")
                                             : std::string("matching-family requires n = ")) +
            std::to_string(expected) + " graphs, found " + std::to_string(s));
    }
    if (role == FamilyRole::CycleFamily && n < 2) {
        report.role_errors.push_back("cycle-family requires n >= 2 (no even cycle exists)");
    }

    for (int g = 1; g <= s; ++g) {
        GraphDegreeSummary summary{n, n};
        for (int r = 1; r <= n; ++r) {
            int d = family.red_degree(g, r);
            summary.min_red_degree = std::min(summary.min_red_degree, d);
            if (d < report.thresholds.red_min)
                report.violations.push_back({g, red(r), d, report.thresholds.red_min});
        }
        for (int b = 1; b <= n; ++b) {
            int d = family.blue_degree(g, b);
            summary.min_blue_degree = std::min(summary.min_blue_degree, d);
            if (d < report.thresholds.blue_min)
                report.violations.push_back({g, blue(b), d, report.thresholds.blue_min});
        }
        report.per_graph.push_back(summary);
    }
    return report;
}

namespace {

VertexId endpoint(const Edge& e, VertexClass cls) {
    return cls == VertexClass::Blue ? blue(e.blue) : red(e.red);
}

bool edge_has_vertex(const Edge& e, VertexId v) {
    return v.cls == VertexClass::Blue ? e.blue == v.index : e.red == v.index;
}

// Walks the ordered edge list as a chain. Returns an empty vector when two
// consecutive edges share no vertex or are the same edge.
std::vector<VertexId> walk_chain(const std::vector<ColoredEdge>& edges, bool closed) {
    const std::size_t m = edges.size();
    std::vector<VertexId> seq;
    if (m == 0) return seq;
    if (m == 1) {
        if (closed) return seq;  // a single edge cannot close a cycle
        seq.push_back(blue(edges[0].edge.blue));
        seq.push_back(red(edges[0].edge.red));
        return seq;
    }
    const Edge& e0 = edges[0].edge;
    const Edge& e1 = edges[1].edge;
    if (e0 == e1) return {};
    VertexId shared;
    if (e0.blue == e1.blue)
        shared = blue(e0.blue);
    else if (e0.red == e1.red)
        shared = red(e0.red);
    else
        return {};
    VertexClass start_cls = shared.cls == VertexClass::Blue ? VertexClass::Red : VertexClass::Blue;
    seq.push_back(endpoint(e0, start_cls));
    seq.push_back(shared);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        // seq.back() is the vertex shared by edges[i-1] and edges[i];
        // the other endpoint of edges[i] must be shared with edges[i+1].
        VertexClass next_cls =
            seq.back().cls == VertexClass::Blue ? VertexClass::Red : VertexClass::Blue;
        VertexId next = endpoint(edges[i].edge, next_cls);
        if (!edge_has_vertex(edges[i + 1].edge, next)) return {};
        if (edges[i].edge == edges[i + 1].edge) return {};
        seq.push_back(next);
    }
    if (!closed) {
        VertexClass last_cls =
            seq.back().cls == VertexClass::Blue ? VertexClass::Red : VertexClass::Blue;
        seq.push_back(endpoint(edges[m - 1].edge, last_cls));
    } else {
        // The last edge must join seq.back() to seq.front().
        VertexClass last_cls =
            seq.back().cls == VertexClass::Blue ? VertexClass::Red : VertexClass::Blue;
        if (endpoint(edges[m - 1].edge, last_cls) != seq.front()) return {};
        if (!edge_has_vertex(edges[m - 1].edge, seq.back())) return {};
    }
    return seq;
}

bool all_distinct(std::vector<VertexId> seq) {
    std::sort(seq.begin(), seq.end());
    return std::adjacent_find(seq.begin(), seq.end()) == seq.end();
}

}  // namespace

std::vector<VertexId> vertex_sequence(const RainbowSubgraph& sub) {
    if (sub.kind == SubgraphKind::Matching)
        throw std::invalid_argument("vertex_sequence: matchings have no chain order");
    auto seq = walk_chain(sub.edges, sub.kind == SubgraphKind::Cycle);
    if (seq.empty()) throw std::invalid_argument("vertex_sequence: edges do not form a chain");
    return seq;
}

VerifyResult verify_rainbow(const RainbowSubgraph& sub, const BipartiteFamily& family) {
    VerifyResult result;
    const int n = family.n();
    const int s = family.graph_count();

    if (sub.edges.empty()) {
        result.reasons.push_back("empty edge set");
        return result;
    }
    bool in_range = true;
    for (const ColoredEdge& ce : sub.edges) {
        if (ce.edge.blue < 1 || ce.edge.blue > n || ce.edge.red < 1 || ce.edge.red > n) {
            result.reasons.push_back("edge endpoint out of range");
            in_range = false;
        }
        if (ce.color < 1 || ce.color > s) {
            result.reasons.push_back("color out of range");
            in_range = false;
        }
    }
    if (!in_range) return result;

    std::set<int> colors;
    for (const ColoredEdge& ce : sub.edges) colors.insert(ce.color);
    if (colors.size() != sub.edges.size()) result.reasons.push_back("non-injective colors");

    for (const ColoredEdge& ce : sub.edges) {
        if (!family.has_edge(ce.color, ce.edge)) {
            result.reasons.push_back("edge " + to_string(blue(ce.edge.blue)) + " " +
                                     to_string(red(ce.edge.red)) + " not in graph " +
                                     std::to_string(ce.color));
        }
    }

    switch (sub.kind) {
        case SubgraphKind::Matching: {
            std::set<int> blues, reds;
            for (const ColoredEdge& ce : sub.edges) {
                blues.insert(ce.edge.blue);
                reds.insert(ce.edge.red);
            }
            if (blues.size() != sub.edges.size() || reds.size() != sub.edges.size())
                result.reasons.push_back("matching edges share a vertex");
            break;
        }
        case SubgraphKind::Cycle: {
            if (sub.edges.size() < 4 || sub.edges.size() % 2 != 0)
                result.reasons.push_back("cycle must have even length >= 4");
            auto seq = walk_chain(sub.edges, true);
            if (seq.empty())
                result.reasons.push_back("edges do not form a closed chain");
            else if (!all_distinct(seq))
                result.reasons.push_back("cycle revisits a vertex");
            break;
        }
        case SubgraphKind::Path: {
            auto seq = walk_chain(sub.edges, false);
            if (seq.empty())
                result.reasons.push_back("edges do not form a chain");
            else if (!all_distinct(seq))
                result.reasons.push_back("path revisits a vertex");
            break;
        }
    }

    result.ok = result.reasons.empty();
    return result;
}

namespace {

RainbowSubgraph rebuild_from_sequence(SubgraphKind kind, const std::vector<VertexId>& seq,
                                      const std::vector<int>& colors) {
    RainbowSubgraph out;
    out.kind = kind;
    const std::size_t m = colors.size();
    for (std::size_t i = 0; i < m; ++i) {
        VertexId a = seq[i];
        VertexId b = seq[(i + 1) % seq.size()];
        Edge e = a.cls == VertexClass::Blue ? Edge{a.index, b.index} : Edge{b.index, a.index};
        out.edges.push_back({e, colors[i]});
    }
    return out;
}

}  // namespace

RainbowSubgraph canonicalize(const RainbowSubgraph& sub) {
    if (sub.kind == SubgraphKind::Matching) {
        RainbowSubgraph out = sub;
        std::sort(out.edges.begin(), out.edges.end(),
                  [](const ColoredEdge& a, const ColoredEdge& b) { return a.edge < b.edge; });
        return out;
    }

    auto seq = vertex_sequence(sub);
    const std::size_t m = sub.edges.size();
    std::vector<int> colors(m);
    for (std::size_t i = 0; i < m; ++i) colors[i] = sub.edges[i].color;

    if (sub.kind == SubgraphKind::Path) {
        // Orient toward the lexicographically smaller vertex sequence.
        std::vector<VertexId> rev(seq.rbegin(), seq.rend());
        if (rev < seq) {
            std::vector<int> rcolors(colors.rbegin(), colors.rend());
            return rebuild_from_sequence(SubgraphKind::Path, rev, rcolors);
        }
        return rebuild_from_sequence(SubgraphKind::Path, seq, colors);
    }

    // Cycle: rotate the lowest-index blue vertex to the front, then orient
    // toward its smaller neighbor.
    const std::size_t L = seq.size();
    std::size_t best = 0;
    for (std::size_t i = 0; i < L; ++i) {
        if (seq[i].cls != VertexClass::Blue) continue;
        if (seq[best].cls != VertexClass::Blue || seq[i].index < seq[best].index) best = i;
    }
    VertexId before = seq[(best + L - 1) % L];
    VertexId after = seq[(best + 1) % L];
    bool forward = after < before;

    std::vector<VertexId> out_seq(L);
    std::vector<int> out_colors(m);
    for (std::size_t i = 0; i < L; ++i) {
        std::size_t src = forward ? (best + i) % L : (best + L - i) % L;
        out_seq[i] = seq[src];
        // Edge i of the output joins out_seq[i] to out_seq[i+1].
        std::size_t edge_src = forward ? (best + i) % L : (best + 2 * L - i - 1) % L;
        out_colors[i] = colors[edge_src];
    }
    return rebuild_from_sequence(SubgraphKind::Cycle, out_seq, out_colors);
}

}  // namespace rainbow

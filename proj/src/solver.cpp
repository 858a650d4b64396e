#include "rainbow/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rainbow/detail/color_matcher.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/lemmas.hpp"

namespace rainbow::solver {

namespace {

/// 1-based circular position arithmetic.
int wrap1(int i, int L) { return ((i - 1) % L + L) % L + 1; }

Edge make_edge(VertexId a, VertexId b) {
    return a.cls == VertexClass::Blue ? Edge{a.index, b.index} : Edge{b.index, a.index};
}

bool has(const BipartiteFamily& family, int color, VertexId a, VertexId b) {
    if (a.cls == b.cls) return false;
    return family.has_edge(color, make_edge(a, b));
}

// Builds, verifies and canonicalizes a cycle witness from a vertex order
// and per-edge colors (cols[i] colors the edge seq[i] -- seq[i+1], last
// wraps around). Nothing leaves the solver unverified.
std::optional<RainbowSubgraph> assemble_cycle(const BipartiteFamily& family,
                                              const std::vector<VertexId>& seq,
                                              const std::vector<int>& cols) {
    if (seq.size() != cols.size()) return std::nullopt;
    RainbowSubgraph sub;
    sub.kind = SubgraphKind::Cycle;
    for (std::size_t i = 0; i < seq.size(); ++i)
        sub.edges.push_back({make_edge(seq[i], seq[(i + 1) % seq.size()]), cols[i]});
    if (!verify_rainbow(sub, family).ok) return std::nullopt;
    return canonicalize(sub);
}

std::optional<RainbowSubgraph> assemble_path(const BipartiteFamily& family,
                                             const std::vector<VertexId>& seq,
                                             const std::vector<int>& cols) {
    if (seq.size() != cols.size() + 1) return std::nullopt;
    RainbowSubgraph sub;
    sub.kind = SubgraphKind::Path;
    for (std::size_t i = 0; i < cols.size(); ++i)
        sub.edges.push_back({make_edge(seq[i], seq[i + 1]), cols[i]});
    if (!verify_rainbow(sub, family).ok) return std::nullopt;
    return canonicalize(sub);
}

// Appends vertices v_from .. v_to stepping by dir (circular) and the color
// of every traversed edge. The first vertex is appended too.
void walk(const LabeledCycleState& st, int from, int to, int dir, std::vector<VertexId>& seq,
          std::vector<int>& cols) {
    const int L = st.length();
    int pos = wrap1(from, L);
    const int end = wrap1(to, L);
    seq.push_back(st.vertex(pos));
    while (pos != end) {
        int next = wrap1(pos + dir, L);
        cols.push_back(dir > 0 ? st.color(pos) : st.color(next));
        seq.push_back(st.vertex(next));
        pos = next;
    }
}

std::vector<int> missing_colors_of(const BipartiteFamily& family, const std::set<int>& used) {
    std::vector<int> missing;
    for (int c = 1; c <= family.graph_count(); ++c)
        if (!used.count(c)) missing.push_back(c);
    return missing;
}

// Colors an arbitrary alternating vertex cycle by matching its edges
// against the whole palette; used by the repair shapes where the argument
// grants free recoloring.
std::optional<RainbowSubgraph> color_cycle_shape(const BipartiteFamily& family,
                                                 const std::vector<VertexId>& seq) {
    const std::size_t L = seq.size();
    detail::ColorMatcher matcher(family.graph_count());
    std::vector<std::uint64_t> masks(L);
    for (std::size_t i = 0; i < L; ++i) {
        VertexId a = seq[i], b = seq[(i + 1) % L];
        if (a.cls == b.cls) return std::nullopt;
        Edge e = make_edge(a, b);
        std::uint64_t mask = 0;
        for (int g = 1; g <= family.graph_count(); ++g)
            if (family.has_edge(g, e)) mask |= std::uint64_t{1} << (g - 1);
        if (mask == 0) return std::nullopt;
        masks[i] = mask;
    }
    for (std::size_t i = 0; i < L; ++i)
        if (!matcher.add_edge(masks[i])) return std::nullopt;
    std::vector<int> cols(L);
    for (std::size_t i = 0; i < L; ++i) cols[i] = matcher.color_of(static_cast<int>(i));
    return assemble_cycle(family, seq, cols);
}

std::string signature(const RainbowSubgraph& sub) {
    std::string sig;
    for (const ColoredEdge& ce : canonicalize(sub).edges) {
        sig += std::to_string(ce.edge.blue) + "," + std::to_string(ce.edge.red) + "," +
               std::to_string(ce.color) + ";";
    }
    return sig;
}

}  // namespace

void AuxiliaryDigraph::add_arc(VertexId from, VertexId to) { arcs_.emplace_back(from, to); }

bool AuxiliaryDigraph::has_arc(VertexId from, VertexId to) const {
    return std::find(arcs_.begin(), arcs_.end(), std::make_pair(from, to)) != arcs_.end();
}

int AuxiliaryDigraph::out_degree(VertexId v) const {
    return static_cast<int>(std::count_if(arcs_.begin(), arcs_.end(),
                                          [v](const auto& a) { return a.first == v; }));
}

int AuxiliaryDigraph::in_degree(VertexId v) const {
    return static_cast<int>(std::count_if(arcs_.begin(), arcs_.end(),
                                          [v](const auto& a) { return a.second == v; }));
}

std::vector<VertexId> AuxiliaryDigraph::in_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& a : arcs_)
        if (a.second == v) out.push_back(a.first);
    return out;
}

std::vector<VertexId> AuxiliaryDigraph::out_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& a : arcs_)
        if (a.first == v) out.push_back(a.second);
    return out;
}

VertexId LabeledCycleState::vertex(int pos) const { return cycle[wrap1(pos, length()) - 1]; }

int LabeledCycleState::color(int pos) const { return cycle_colors[wrap1(pos, length()) - 1]; }

RainbowSubgraph LabeledCycleState::cycle_subgraph() const {
    RainbowSubgraph sub;
    sub.kind = SubgraphKind::Cycle;
    const int L = length();
    for (int i = 0; i < L; ++i)
        sub.edges.push_back({make_edge(cycle[i], cycle[(i + 1) % L]), cycle_colors[i]});
    return sub;
}

std::optional<VertexId> LabeledCycleState::pendant_red() const {
    if (!pendant) return std::nullopt;
    return red(pendant->edge.red);
}

std::optional<VertexId> LabeledCycleState::pendant_blue() const {
    if (!pendant) return std::nullopt;
    return blue(pendant->edge.blue);
}

MoveOutcome MoveOutcome::with_witness(RainbowSubgraph w) {
    MoveOutcome out;
    out.kind = MoveKind::Witness;
    out.witness = std::move(w);
    return out;
}

MoveOutcome MoveOutcome::with_state(LabeledCycleState s) {
    MoveOutcome out;
    out.kind = MoveKind::State;
    out.state = std::move(s);
    return out;
}

LabeledCycleState make_state(const RainbowSubgraph& cycle, std::optional<ColoredEdge> pendant,
                             const BipartiteFamily& family) {
    if (cycle.kind != SubgraphKind::Cycle)
        throw std::invalid_argument("make_state: subgraph is not a cycle");
    auto check = verify_rainbow(cycle, family);
    if (!check.ok)
        throw std::invalid_argument("make_state: cycle does not verify: " + check.reasons.front());

    LabeledCycleState st;
    RainbowSubgraph canon = canonicalize(cycle);
    st.cycle = vertex_sequence(canon);
    for (const ColoredEdge& ce : canon.edges) st.cycle_colors.push_back(ce.color);

    std::set<int> used(st.cycle_colors.begin(), st.cycle_colors.end());
    std::set<VertexId> on_cycle(st.cycle.begin(), st.cycle.end());

    if (pendant) {
        if (pendant->color < 1 || pendant->color > family.graph_count() ||
            used.count(pendant->color) || !family.has_edge(pendant->color, pendant->edge))
            throw std::invalid_argument("make_state: pendant edge not admissible");
        if (on_cycle.count(blue(pendant->edge.blue)) || on_cycle.count(red(pendant->edge.red)))
            throw std::invalid_argument("make_state: pendant touches the cycle");
        used.insert(pendant->color);
        on_cycle.insert(blue(pendant->edge.blue));
        on_cycle.insert(red(pendant->edge.red));
        st.pendant = pendant;
    }

    for (int b = 1; b <= family.n(); ++b)
        if (!on_cycle.count(blue(b))) st.outside.push_back(blue(b));
    for (int r = 1; r <= family.n(); ++r)
        if (!on_cycle.count(red(r))) st.outside.push_back(red(r));
    st.missing_colors = missing_colors_of(family, used);
    return st;
}

LabeledCycleState relabel_to_canonical(const RainbowSubgraph& sub, const BipartiteFamily& family) {
    return make_state(sub, std::nullopt, family);
}

MoveOutcome recolor_edge(const LabeledCycleState& state, const BipartiteFamily& family,
                         int position, int new_color) {
    const int L = state.length();
    if (new_color < 1 || new_color > family.graph_count())
        throw std::invalid_argument("recolor_edge: color out of range");
    position = wrap1(position, L);
    const int old_color = state.color(position);
    Edge target = make_edge(state.vertex(position), state.vertex(position + 1));
    if (new_color == old_color) return MoveOutcome::with_state(state);
    if (!family.has_edge(new_color, target)) return MoveOutcome::no_move();

    LabeledCycleState next = state;
    auto it = std::find(next.missing_colors.begin(), next.missing_colors.end(), new_color);
    if (it != next.missing_colors.end()) {
        next.missing_colors.erase(it);
        next.cycle_colors[position - 1] = new_color;
        next.missing_colors.push_back(old_color);
        std::sort(next.missing_colors.begin(), next.missing_colors.end());
        return MoveOutcome::with_state(next);
    }
    // Occupied color: swap with whichever edge holds it.
    for (int q = 1; q <= L; ++q) {
        if (q == position || state.color(q) != new_color) continue;
        Edge other = make_edge(state.vertex(q), state.vertex(q + 1));
        if (!family.has_edge(old_color, other)) return MoveOutcome::no_move();
        next.cycle_colors[position - 1] = new_color;
        next.cycle_colors[wrap1(q, L) - 1] = old_color;
        return MoveOutcome::with_state(next);
    }
    if (state.pendant && state.pendant->color == new_color) {
        if (!family.has_edge(old_color, state.pendant->edge)) return MoveOutcome::no_move();
        next.cycle_colors[position - 1] = new_color;
        next.pendant->color = old_color;
        return MoveOutcome::with_state(next);
    }
    return MoveOutcome::no_move();
}

AuxiliaryDigraph build_auxiliary_digraph(const LabeledCycleState& state,
                                         const BipartiteFamily& family) {
    AuxiliaryDigraph digraph;
    const int L = state.length();
    auto y = state.pendant_blue();
    for (int i = 2; i <= L; i += 2) {
        VertexId from = state.vertex(i);  // red
        const int g = state.color(i);
        for (int j = 1; j <= L; j += 2) {
            if (j == wrap1(i + 1, L)) continue;  // successor carries this color already
            if (has(family, g, state.vertex(j), from)) digraph.add_arc(from, state.vertex(j));
        }
        if (y && has(family, g, *y, from)) digraph.add_arc(from, *y);
    }
    return digraph;
}

AuxiliaryDigraph build_auxiliary_digraph(const RainbowSubgraph& near_matching,
                                         const BipartiteFamily& family) {
    if (near_matching.kind != SubgraphKind::Matching)
        throw std::invalid_argument("build_auxiliary_digraph: expected a matching");
    if (!verify_rainbow(near_matching, family).ok)
        throw std::invalid_argument("build_auxiliary_digraph: matching does not verify");
    AuxiliaryDigraph digraph;
    for (const ColoredEdge& ce : near_matching.edges) {
        for (int b = 1; b <= family.n(); ++b) {
            if (b == ce.edge.blue) continue;  // arcs avoid the matched partner
            if (family.has_edge(ce.color, b, ce.edge.red))
                digraph.add_arc(red(ce.edge.red), blue(b));
        }
    }
    return digraph;
}

// ---------------------------------------------------------------------------
// close_hamiltonian

namespace {

// Pendant insertion guided by arcs into the pendant blue vertex: a chord
// from x via a missing color at v_j, with either a direct hop y--v_j+1 in
// the freed color, or a detour through an in-neighbor of y plus the chord
// v_i+1 -- v_j+1 in the freed color.
std::optional<RainbowSubgraph> close_by_insertion(const LabeledCycleState& st,
                                                  const BipartiteFamily& family) {
    const int L = st.length();
    VertexId x = *st.pendant_red(), y = *st.pendant_blue();
    const int pc = st.pendant->color;
    for (int m : st.missing_colors) {
        for (int j = 1; j <= L; j += 2) {
            if (!has(family, m, st.vertex(j), x)) continue;
            const int cj = st.color(j);
            if (has(family, cj, y, st.vertex(j + 1))) {
                std::vector<VertexId> seq;
                std::vector<int> cols;
                walk(st, 1, j, +1, seq, cols);
                seq.push_back(x);
                cols.push_back(m);
                seq.push_back(y);
                cols.push_back(pc);
                cols.push_back(cj);
                walk(st, j + 1, L, +1, seq, cols);
                cols.push_back(st.color(L));
                if (auto w = assemble_cycle(family, seq, cols)) return w;
            }
            for (int i = 2; i <= L; i += 2) {
                const int ci = st.color(i);
                if (!has(family, ci, y, st.vertex(i))) continue;
                if (!has(family, cj, st.vertex(i + 1), st.vertex(j + 1))) continue;
                std::vector<VertexId> seq{st.vertex(j), x, y};
                std::vector<int> cols{m, pc, ci};
                walk(st, i, j + 1, -1, seq, cols);
                cols.push_back(cj);
                if (wrap1(i + 1, L) != j) {
                    walk(st, i + 1, j - 1, +1, seq, cols);
                    cols.push_back(st.color(j - 1));
                }
                if (auto w = assemble_cycle(family, seq, cols)) return w;
            }
        }
    }
    return std::nullopt;
}

// Rotation through a high-in-degree blue vertex: route the pendant between
// an adjacent chord pair, then close the resulting path with a chord to
// its end plus the freed color back to its start.
std::optional<RainbowSubgraph> close_by_rotation(const LabeledCycleState& st,
                                                 const BipartiteFamily& family) {
    const int L = st.length();
    VertexId x = *st.pendant_red(), y = *st.pendant_blue();
    const int pc = st.pendant->color;
    for (int w_pos = 1; w_pos <= L; w_pos += 2) {
        auto rot = [&](int t) { return wrap1(w_pos + t - 1, L); };
        VertexId w = st.vertex(w_pos);
        const int c1 = st.color(rot(1));
        for (int m : st.missing_colors) {
            for (int jj = 1; jj <= L; ++jj) {
                VertexId vj = st.vertex(rot(jj));
                VertexId vj1 = st.vertex(rot(jj + 1));
                VertexId sigma, tau;
                int lead_color, trail_color;
                if (jj % 2 == 1) {  // v_jj blue: chord to x, then y onward
                    if (!has(family, c1, vj, x) || !has(family, m, y, vj1)) continue;
                    sigma = x, tau = y, lead_color = c1, trail_color = m;
                } else {
                    if (!has(family, m, y, vj) || !has(family, c1, vj1, x)) continue;
                    sigma = y, tau = x, lead_color = m, trail_color = c1;
                }
                if (jj == 1) {
                    // direct: w, sigma, tau, v_2, ..., v_L
                    std::vector<VertexId> seq{w, sigma, tau};
                    std::vector<int> cols{lead_color, pc, trail_color};
                    walk(st, rot(2), rot(L), +1, seq, cols);
                    cols.push_back(st.color(rot(L)));
                    if (auto witness = assemble_cycle(family, seq, cols)) return witness;
                    continue;
                }
                // Hamiltonian path v_2 .. v_jj sigma tau v_jj+1 .. v_L w
                std::vector<VertexId> path;
                std::vector<int> pcols;
                walk(st, rot(2), rot(jj), +1, path, pcols);
                pcols.push_back(lead_color);
                path.push_back(sigma);
                pcols.push_back(pc);
                path.push_back(tau);
                pcols.push_back(trail_color);
                if (jj < L) {
                    walk(st, rot(jj + 1), rot(L), +1, path, pcols);
                    pcols.push_back(st.color(rot(L)));
                }
                path.push_back(w);  // jj == L: tau links straight to w
                const int freed = st.color(rot(jj));
                // Posa closure: chord from some path vertex to the path end
                // in that edge's own color, plus the freed color back to the
                // path start.
                const std::size_t P = path.size();
                for (std::size_t t = 0; t + 1 < P; ++t) {
                    if (!has(family, pcols[t], path[t], path[P - 1])) continue;
                    if (!has(family, freed, path[t + 1], path[0])) continue;
                    std::vector<VertexId> seq(path.begin(), path.begin() + t + 1);
                    std::vector<int> cols(pcols.begin(), pcols.begin() + t);
                    cols.push_back(pcols[t]);  // chord to the end
                    for (std::size_t u = P - 1; u > t + 1; --u) {
                        seq.push_back(path[u]);
                        cols.push_back(pcols[u - 1]);
                    }
                    seq.push_back(path[t + 1]);
                    cols.push_back(freed);
                    if (auto witness = assemble_cycle(family, seq, cols)) return witness;
                }
            }
        }
    }
    return std::nullopt;
}

// Mirrored rotation: pendant enters next to a red neighbor of y via a
// missing color; the freed color carries a chord from x, paired with an
// arc into the chosen blue vertex.
std::optional<RainbowSubgraph> close_by_mirrored_rotation(const LabeledCycleState& st,
                                                          const BipartiteFamily& family) {
    const int L = st.length();
    VertexId x = *st.pendant_red(), y = *st.pendant_blue();
    const int pc = st.pendant->color;
    for (int m : st.missing_colors) {
        for (int e = 2; e <= L; e += 2) {
            if (!has(family, m, y, st.vertex(e))) continue;
            const int j = e - 1;
            const int cj = st.color(j);
            if (has(family, cj, st.vertex(j), x)) {
                std::vector<VertexId> seq;
                std::vector<int> cols;
                walk(st, 1, j, +1, seq, cols);
                cols.push_back(cj);
                seq.push_back(x);
                cols.push_back(pc);
                seq.push_back(y);
                cols.push_back(m);
                walk(st, e, L, +1, seq, cols);
                cols.push_back(st.color(L));
                if (auto w = assemble_cycle(family, seq, cols)) return w;
            }
            for (int k = 2; k <= L; k += 2) {
                if (wrap1(k + 1, L) == j) continue;  // successor arc excluded
                if (!has(family, st.color(k), st.vertex(k), st.vertex(j))) continue;
                if (!has(family, cj, st.vertex(k + 1), x)) continue;
                std::vector<VertexId> seq;
                std::vector<int> cols;
                walk(st, k + 1, j, +1, seq, cols);
                cols.push_back(st.color(k));
                walk(st, k, j + 1, -1, seq, cols);
                cols.push_back(m);
                seq.push_back(y);
                cols.push_back(pc);
                seq.push_back(x);
                cols.push_back(cj);
                if (auto w = assemble_cycle(family, seq, cols)) return w;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

MoveOutcome close_hamiltonian(const LabeledCycleState& state, const BipartiteFamily& family) {
    const int n = family.n();
    if (!state.pendant || state.length() != 2 * n - 2 || state.length() < 4)
        throw std::invalid_argument("close_hamiltonian: need a (2n-2)-cycle with a pendant edge");
    if (state.missing_colors.empty()) return MoveOutcome::no_move();

    if (auto w = close_by_insertion(state, family)) return MoveOutcome::with_witness(*w);
    if (auto w = close_by_rotation(state, family)) return MoveOutcome::with_witness(*w);
    if (auto w = close_by_mirrored_rotation(state, family)) return MoveOutcome::with_witness(*w);
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// rotate_path

MoveOutcome rotate_path(const RainbowSubgraph& path, const BipartiteFamily& family) {
    if (path.kind != SubgraphKind::Path) throw std::invalid_argument("rotate_path: not a path");
    auto check = verify_rainbow(path, family);
    if (!check.ok) throw std::invalid_argument("rotate_path: path does not verify");
    const int n = family.n();
    if (static_cast<int>(path.edges.size()) != 2 * n - 1)
        throw std::invalid_argument("rotate_path: path must span all vertices");

    // Orient red endpoint first.
    std::vector<VertexId> pv = vertex_sequence(path);
    std::vector<int> pc;
    for (const ColoredEdge& ce : path.edges) pc.push_back(ce.color);
    if (pv.front().cls != VertexClass::Red) {
        std::reverse(pv.begin(), pv.end());
        std::reverse(pc.begin(), pc.end());
    }

    std::set<int> used(pc.begin(), pc.end());
    std::vector<int> missing = missing_colors_of(family, used);
    if (missing.empty()) return MoveOutcome::no_move();

    const int last = 2 * n - 1;
    for (int m : missing) {  // close into a Hamiltonian cycle outright
        if (has(family, m, pv[last], pv[0])) {
            std::vector<int> cols = pc;
            cols.push_back(m);
            if (auto w = assemble_cycle(family, pv, cols)) return MoveOutcome::with_witness(*w);
        }
    }
    if (n < 3) return MoveOutcome::no_move();

    const ColoredEdge pendant{make_edge(pv[0], pv[1]), pc[0]};
    const int m1 = pc[1];

    // Chop the first two vertices off and close the remainder.
    auto short_close = [&](int closing_color) -> std::optional<LabeledCycleState> {
        if (!has(family, closing_color, pv[last], pv[2])) return std::nullopt;
        std::vector<VertexId> seq(pv.begin() + 2, pv.end());
        std::vector<int> cols(pc.begin() + 2, pc.end());
        cols.push_back(closing_color);
        if (auto cycle = assemble_cycle(family, seq, cols)) return make_state(*cycle, pendant, family);
        return std::nullopt;
    };
    for (int m : missing)
        if (auto st = short_close(m)) return MoveOutcome::with_state(*st);
    if (auto st = short_close(m1)) return MoveOutcome::with_state(*st);

    // Pigeonhole rotation: chord from the third vertex to p_j in the color
    // of the second edge, paired with a chord from the blue endpoint to
    // q_j-1 in a missing color.
    for (int m : missing) {
        for (int j = 4; j <= n; ++j) {
            VertexId pj = pv[2 * j - 3], qj_prev = pv[2 * j - 4];
            if (!has(family, m1, pj, pv[2])) continue;
            if (!has(family, m, pv[last], qj_prev)) continue;
            std::vector<VertexId> seq{pv[2]};
            std::vector<int> cols{m1};
            for (int t = 2 * j - 3; t <= last; ++t) {
                seq.push_back(pv[t]);
                if (t < last) cols.push_back(pc[t]);
            }
            cols.push_back(m);
            for (int t = 2 * j - 4; t >= 3; --t) {
                seq.push_back(pv[t]);
                cols.push_back(pc[t - 1]);
            }
            // closing edge (pv[3], pv[2]) keeps its path color pc[2]
            if (auto cycle = assemble_cycle(family, seq, cols)) {
                return MoveOutcome::with_state(make_state(*cycle, pendant, family));
            }
        }
    }
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// extend_cycle

MoveOutcome extend_cycle(const RainbowSubgraph& cycle, const BipartiteFamily& family) {
    if (cycle.kind != SubgraphKind::Cycle)
        throw std::invalid_argument("extend_cycle: not a cycle");
    const int n = family.n();
    if (static_cast<int>(cycle.edges.size()) != 2 * n - 2)
        throw std::invalid_argument("extend_cycle: cycle must have length 2n-2");
    LabeledCycleState st = relabel_to_canonical(cycle, family);
    if (st.outside.size() != 2) throw std::invalid_argument("extend_cycle: expected two outside vertices");

    VertexId bb = st.outside[0].cls == VertexClass::Blue ? st.outside[0] : st.outside[1];
    VertexId rr = st.outside[0].cls == VertexClass::Red ? st.outside[0] : st.outside[1];

    for (int m : st.missing_colors) {  // outside edge in a missing color
        if (has(family, m, bb, rr)) {
            return MoveOutcome::with_state(make_state(st.cycle_subgraph(),
                                                      ColoredEdge{make_edge(bb, rr), m}, family));
        }
    }

    // Neighbor argument: chord from the outside red to a blue cycle vertex
    // in one missing color, chord from the outside blue to an adjacent red
    // cycle vertex in another; the cycle unrolls into a Hamiltonian path.
    const int L = st.length();
    for (int m1 : st.missing_colors) {
        for (int m2 : st.missing_colors) {
            if (m1 == m2) continue;
            for (int a = 1; a <= L; a += 2) {
                if (!has(family, m1, st.vertex(a), rr)) continue;
                for (int db : {+1, -1}) {
                    int b_pos = wrap1(a + db, L);
                    if (!has(family, m2, bb, st.vertex(b_pos))) continue;
                    std::vector<VertexId> seq{bb};
                    std::vector<int> cols{m2};
                    walk(st, b_pos, a, db, seq, cols);  // long way around
                    cols.push_back(m1);
                    seq.push_back(rr);
                    if (auto path = assemble_path(family, seq, cols))
                        return MoveOutcome::with_witness(*path);
                }
            }
        }
    }
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// shorten_cycle

namespace {

// Repair of a (2n-4)-cycle + pendant state: reinsert outside vertices into
// fixed small shapes (n = 4) or by edge/vertex insertion (n >= 5); colors
// are reassigned over the whole palette by matching.
std::optional<RainbowSubgraph> repair_short_state(const LabeledCycleState& st,
                                                  const BipartiteFamily& family) {
    const int L = st.length();
    VertexId x = *st.pendant_red(), y = *st.pendant_blue();
    VertexId w{}, z{};
    for (VertexId v : st.outside) (v.cls == VertexClass::Blue ? w : z) = v;

    if (L == 4) {
        // All three shapes live on six of the eight vertices.
        for (int a = 1; a <= L; a += 2) {
            for (int dir : {+1, -1}) {
                std::vector<VertexId> seq{x};
                for (int t = 0; t < 4; ++t) seq.push_back(st.vertex(a + dir * t));
                seq.push_back(y);
                if (auto c = color_cycle_shape(family, seq)) return c;
            }
        }
        for (int a = 1; a <= L; a += 2) {
            for (int dir : {+1, -1}) {
                std::vector<VertexId> seq{x, st.vertex(a), st.vertex(a + dir), w, z, y};
                if (auto c = color_cycle_shape(family, seq)) return c;
            }
        }
        for (int a = 1; a <= L; a += 2) {
            for (int c_pos = 1; c_pos <= L; c_pos += 2) {
                if (c_pos == a) continue;
                for (int dir : {+1, -1}) {
                    std::vector<VertexId> seq{x, st.vertex(a), z,
                                              st.vertex(c_pos), st.vertex(c_pos + dir), y};
                    if (auto c = color_cycle_shape(family, seq)) return c;
                }
            }
        }
        return std::nullopt;
    }

    // n >= 5: insert the pendant across one cycle edge...
    for (int j = 1; j <= L; ++j) {
        VertexId sigma = st.vertex(j).cls == VertexClass::Blue ? x : y;
        VertexId tau = sigma == x ? y : x;
        std::vector<VertexId> seq;
        std::vector<int> ignored;
        walk(st, 1, j, +1, seq, ignored);
        seq.push_back(sigma);
        seq.push_back(tau);
        if (j != L) {
            std::vector<int> ignored2;
            walk(st, j + 1, L, +1, seq, ignored2);
        }
        if (auto c = color_cycle_shape(family, seq)) return c;
    }
    // ...or replace one red cycle vertex by the path x-y-z.
    for (int j = 1; j <= L; j += 2) {
        std::vector<VertexId> seq;
        std::vector<int> ignored;
        walk(st, 1, j, +1, seq, ignored);
        seq.push_back(x);
        seq.push_back(y);
        seq.push_back(z);
        std::vector<int> ignored2;
        walk(st, j + 2, L, +1, seq, ignored2);
        if (auto c = color_cycle_shape(family, seq)) return c;
    }
    return std::nullopt;
}

}  // namespace

MoveOutcome shorten_cycle(const LabeledCycleState& state, const BipartiteFamily& family) {
    const int n = family.n();
    const int L = state.length();
    if (L != 2 * n || state.pendant)
        throw std::invalid_argument("shorten_cycle: need a bare full-length cycle state");
    if (n < 3) throw std::invalid_argument("shorten_cycle: n must be >= 3");

    std::vector<LabeledCycleState> repair_candidates;

    for (int w_pos = 1; w_pos <= L; w_pos += 2) {
        auto rot = [&](int t) { return wrap1(w_pos + t - 1, L); };
        VertexId w = state.vertex(w_pos);
        const int c1 = state.color(rot(1));

        std::vector<int> arcs;  // rotated positions k with an arc v_k -> w
        for (int k = 2; k <= L - 2; k += 2) {
            if (has(family, state.color(rot(k)), state.vertex(rot(k)), w)) arcs.push_back(k);
        }

        for (int k : arcs) {
            if (k != 2 * n - 2) continue;
            // chord straight back: drop the last two vertices
            std::vector<VertexId> seq;
            std::vector<int> cols;
            walk(state, rot(1), rot(k), +1, seq, cols);
            cols.push_back(state.color(rot(k)));
            if (auto witness = assemble_cycle(family, seq, cols))
                return MoveOutcome::with_witness(*witness);
        }
        for (int k : arcs) {
            if (k == 2 * n - 2) continue;
            // skip two vertices: chord to w, then the first cycle color
            // jumps from the second vertex across the gap
            if (!has(family, c1, state.vertex(rot(2)), state.vertex(rot(k + 3)))) continue;
            std::vector<VertexId> seq{w};
            std::vector<int> cols;
            cols.push_back(state.color(rot(k)));
            std::vector<VertexId> seq2;
            std::vector<int> cols2;
            walk(state, rot(k), rot(2), -1, seq2, cols2);
            seq.insert(seq.end(), seq2.begin(), seq2.end());
            cols.insert(cols.end(), cols2.begin(), cols2.end());
            cols.push_back(c1);
            std::vector<VertexId> seq3;
            std::vector<int> cols3;
            walk(state, rot(k + 3), rot(L), +1, seq3, cols3);
            seq.insert(seq.end(), seq3.begin(), seq3.end());
            cols.insert(cols.end(), cols3.begin(), cols3.end());
            cols.push_back(state.color(rot(L)));
            if (auto witness = assemble_cycle(family, seq, cols))
                return MoveOutcome::with_witness(*witness);
        }
        if (n < 4) continue;  // the pendant repair needs a cycle of length >= 4
        for (int k : arcs) {
            if (k == 2 * n - 4) {
                // chord back dropping four vertices; the first two dropped form the pendant
                std::vector<VertexId> seq;
                std::vector<int> cols;
                walk(state, rot(1), rot(k), +1, seq, cols);
                cols.push_back(state.color(rot(k)));
                if (auto cycle = assemble_cycle(family, seq, cols)) {
                    ColoredEdge pend{make_edge(state.vertex(rot(k + 1)), state.vertex(rot(k + 2))),
                                     state.color(rot(k + 1))};
                    repair_candidates.push_back(make_state(*cycle, pend, family));
                }
            }
            if (k <= 2 * n - 6 &&
                has(family, c1, state.vertex(rot(2)), state.vertex(rot(k + 5)))) {
                // skip four vertices
                std::vector<VertexId> seq{w};
                std::vector<int> cols{state.color(rot(k))};
                std::vector<VertexId> seq2;
                std::vector<int> cols2;
                walk(state, rot(k), rot(2), -1, seq2, cols2);
                seq.insert(seq.end(), seq2.begin(), seq2.end());
                cols.insert(cols.end(), cols2.begin(), cols2.end());
                cols.push_back(c1);
                std::vector<VertexId> seq3;
                std::vector<int> cols3;
                walk(state, rot(k + 5), rot(L), +1, seq3, cols3);
                seq.insert(seq.end(), seq3.begin(), seq3.end());
                cols.insert(cols.end(), cols3.begin(), cols3.end());
                cols.push_back(state.color(rot(L)));
                if (auto cycle = assemble_cycle(family, seq, cols)) {
                    ColoredEdge pend{make_edge(state.vertex(rot(k + 1)), state.vertex(rot(k + 2))),
                                     state.color(rot(k + 1))};
                    repair_candidates.push_back(make_state(*cycle, pend, family));
                }
            }
        }
    }

    for (const LabeledCycleState& candidate : repair_candidates) {
        if (auto witness = repair_short_state(candidate, family))
            return MoveOutcome::with_witness(*witness);
    }
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// find_cycle_by_shift_sets

MoveOutcome find_cycle_by_shift_sets(const LabeledCycleState& state, const BipartiteFamily& family,
                                     int length) {
    const int n = family.n();
    const int L = state.length();
    if (L != 2 * n - 2 || state.pendant)
        throw std::invalid_argument("find_cycle_by_shift_sets: need a bare (2n-2)-cycle state");
    if (length % 2 != 0 || length < 4 || length > 2 * n - 4)
        throw std::invalid_argument("find_cycle_by_shift_sets: length must be even in [4, 2n-4]");
    if (state.outside.size() != 2 || state.missing_colors.size() < 2)
        return MoveOutcome::no_move();

    VertexId x{}, y{};
    for (VertexId v : state.outside) (v.cls == VertexClass::Red ? x : y) = v;

    for (int ma : state.missing_colors) {
        for (int mb : state.missing_colors) {
            if (ma == mb) continue;
            CyclicSet a_set(L);
            for (int i = 1; i <= L; i += 2)
                if (has(family, ma, state.vertex(i), x)) a_set.insert(i - 1);
            if (a_set.empty()) continue;

            // Closing chord for x at distance length-2 along the cycle.
            CyclicSet b_set = symmetric_shift_union(a_set, length - 2);
            for (int res : a_set.members()) {
                const int i = res + 1;
                for (int delta : {length - 2, -(length - 2)}) {
                    int t = wrap1(i + delta, L);
                    if (!b_set.contains(t - 1)) continue;
                    if (!has(family, mb, state.vertex(t), x)) continue;
                    std::vector<VertexId> seq{x};
                    std::vector<int> cols{ma};
                    walk(state, i, t, delta > 0 ? +1 : -1, seq, cols);
                    cols.push_back(mb);
                    if (auto witness = assemble_cycle(family, seq, cols))
                        return MoveOutcome::with_witness(*witness);
                }
            }

            // Closing through y at distance length-3, which needs the xy
            // edge in some spare color.
            CyclicSet b_prime = symmetric_shift_union(a_set, length - 3);
            for (int res : a_set.members()) {
                const int i = res + 1;
                for (int delta : {length - 3, -(length - 3)}) {
                    int t = wrap1(i + delta, L);
                    if (!b_prime.contains(t - 1)) continue;
                    if (!has(family, mb, y, state.vertex(t))) continue;
                    std::vector<VertexId> seq{y, x};
                    std::vector<int> cols;
                    std::vector<VertexId> walk_seq;
                    std::vector<int> walk_cols;
                    walk(state, i, t, delta > 0 ? +1 : -1, walk_seq, walk_cols);
                    std::set<int> used{ma, mb};
                    used.insert(walk_cols.begin(), walk_cols.end());
                    int mw = 0;
                    for (int c = 1; c <= family.graph_count(); ++c) {
                        if (!used.count(c) && has(family, c, y, x)) {
                            mw = c;
                            break;
                        }
                    }
                    if (mw == 0) continue;
                    cols.push_back(mw);
                    cols.push_back(ma);
                    seq.insert(seq.end(), walk_seq.begin(), walk_seq.end());
                    cols.insert(cols.end(), walk_cols.begin(), walk_cols.end());
                    cols.push_back(mb);
                    if (auto witness = assemble_cycle(family, seq, cols))
                        return MoveOutcome::with_witness(*witness);
                }
            }
        }
    }
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// bondy_pairing_moves

std::vector<RainbowSubgraph> bondy_pairing_moves(const LabeledCycleState& state,
                                                 const BipartiteFamily& family, int length,
                                                 int j) {
    const int L = state.length();
    if (state.pendant) throw std::invalid_argument("bondy_pairing_moves: need a bare cycle state");
    if (length % 2 != 0 || length < 4 || length > L)
        throw std::invalid_argument("bondy_pairing_moves: length must be even in [4, cycle length]");
    if (j < 1 || j > L) throw std::invalid_argument("bondy_pairing_moves: edge index out of range");

    std::vector<RainbowSubgraph> out;
    std::set<std::string> seen;
    if (state.missing_colors.size() < 2) return out;

    for (int k = 1; k <= L; ++k) {
        if (k == wrap1(j + 1, L)) continue;
        if (k % 2 == j % 2) continue;  // chord endpoints need opposite classes
        // window of positions k-length+3 .. k-1 (the short side)
        const int offset = ((j - (k - length + 3)) % L + L) % L;
        const bool j_in_window = offset <= length - 4;
        std::vector<VertexId> seq{state.vertex(j)};
        std::vector<int> walk_cols;
        std::vector<VertexId> walk_seq;
        int t;
        if (!j_in_window) {
            t = wrap1(k - length + 3, L);
            walk(state, k, t, -1, walk_seq, walk_cols);
            seq.insert(seq.end(), walk_seq.begin(), walk_seq.end());
            seq.push_back(state.vertex(j + 1));
        } else {
            t = wrap1(k - length + 1, L);
            walk(state, k, j + 1, -1, walk_seq, walk_cols);
            seq.insert(seq.end(), walk_seq.begin(), walk_seq.end());
            std::vector<VertexId> walk_seq2;
            std::vector<int> walk_cols2;
            walk(state, t, j - 1, +1, walk_seq2, walk_cols2);
            seq.insert(seq.end(), walk_seq2.begin(), walk_seq2.end());
            walk_cols.insert(walk_cols.end(), walk_cols2.begin(), walk_cols2.end());
        }
        for (int ca : state.missing_colors) {
            for (int cb : state.missing_colors) {
                if (ca == cb) continue;
                if (!has(family, ca, state.vertex(j), state.vertex(k))) continue;
                if (!has(family, cb, state.vertex(j + 1), state.vertex(t))) continue;
                std::vector<int> cols{ca};
                if (!j_in_window) {
                    cols.insert(cols.end(), walk_cols.begin(), walk_cols.end());
                    cols.push_back(cb);
                    cols.push_back(state.color(j));
                } else {
                    // walk_cols covers both arcs; the chord sits between them
                    std::size_t first_arc = 0;
                    // positions k down to j+1 contribute that many edges
                    first_arc = static_cast<std::size_t>(((k - (j + 1)) % L + L) % L);
                    cols.insert(cols.end(), walk_cols.begin(), walk_cols.begin() + first_arc);
                    cols.push_back(cb);
                    cols.insert(cols.end(), walk_cols.begin() + first_arc, walk_cols.end());
                    cols.push_back(state.color(j - 1));
                }
                if (auto witness = assemble_cycle(family, seq, cols)) {
                    if (seen.insert(signature(*witness)).second) out.push_back(*witness);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// pm_swap

MoveOutcome pm_swap(const RainbowSubgraph& matching, const BipartiteFamily& family) {
    if (matching.kind != SubgraphKind::Matching)
        throw std::invalid_argument("pm_swap: not a matching");
    const int n = family.n();
    if (static_cast<int>(matching.edges.size()) != n - 1)
        throw std::invalid_argument("pm_swap: need exactly n-1 edges");
    if (!verify_rainbow(matching, family).ok)
        throw std::invalid_argument("pm_swap: matching does not verify");

    std::vector<ColoredEdge> pairs(matching.edges);
    std::sort(pairs.begin(), pairs.end(),
              [](const ColoredEdge& a, const ColoredEdge& b) { return a.edge < b.edge; });

    std::uint64_t blues = 0, reds = 0;
    std::set<int> used;
    for (const ColoredEdge& ce : pairs) {
        blues |= std::uint64_t{1} << (ce.edge.blue - 1);
        reds |= std::uint64_t{1} << (ce.edge.red - 1);
        used.insert(ce.color);
    }
    int bn = 0, rn = 0;
    for (int v = 1; v <= n; ++v) {
        if (!((blues >> (v - 1)) & 1u)) bn = v;
        if (!((reds >> (v - 1)) & 1u)) rn = v;
    }
    std::vector<int> missing = missing_colors_of(family, used);
    if (missing.empty()) return MoveOutcome::no_move();

    auto finish = [&](std::vector<ColoredEdge> edges) -> MoveOutcome {
        RainbowSubgraph pm;
        pm.kind = SubgraphKind::Matching;
        pm.edges = std::move(edges);
        pm = canonicalize(pm);
        if (!verify_rainbow(pm, family).ok) return MoveOutcome::no_move();
        return MoveOutcome::with_witness(pm);
    };
    auto keep_except = [&](std::initializer_list<int> drop) {
        std::vector<ColoredEdge> kept;
        for (int t = 0; t < n - 1; ++t)
            if (std::find(drop.begin(), drop.end(), t) == drop.end()) kept.push_back(pairs[t]);
        return kept;
    };

    const int k_pairs = n - 1;
    for (int m : missing) {
        // the unmatched pair may simply join up
        if (family.has_edge(m, bn, rn)) {
            auto edges = keep_except(std::initializer_list<int>{});
            edges.push_back({Edge{bn, rn}, m});
            auto out = finish(std::move(edges));
            if (out.kind == MoveKind::Witness) return out;
        }
        // one swap through the unmatched pair
        for (int i = 0; i < k_pairs; ++i) {
            if (!family.has_edge(m, pairs[i].edge.blue, rn)) continue;
            if (!family.has_edge(pairs[i].color, bn, pairs[i].edge.red)) continue;
            auto edges = keep_except({i});
            edges.push_back({Edge{pairs[i].edge.blue, rn}, m});
            edges.push_back({Edge{bn, pairs[i].edge.red}, pairs[i].color});
            auto out = finish(std::move(edges));
            if (out.kind == MoveKind::Witness) return out;
        }
        // two swaps: pair j absorbs the unmatched vertices, pairs i and k trade
        for (int i = 0; i < k_pairs; ++i) {
            for (int jj = 0; jj < k_pairs; ++jj) {
                if (jj == i) continue;
                if (!family.has_edge(m, pairs[jj].edge.blue, rn)) continue;
                if (!family.has_edge(pairs[i].color, bn, pairs[jj].edge.red)) continue;
                for (int kk = 0; kk < k_pairs; ++kk) {
                    if (kk == jj || kk == i) continue;
                    if (!family.has_edge(pairs[kk].color, pairs[i].edge.blue, pairs[kk].edge.red))
                        continue;
                    if (!family.has_edge(pairs[jj].color, pairs[kk].edge.blue, pairs[i].edge.red))
                        continue;
                    auto edges = keep_except({i, jj, kk});
                    edges.push_back({Edge{pairs[jj].edge.blue, rn}, m});
                    edges.push_back({Edge{bn, pairs[jj].edge.red}, pairs[i].color});
                    edges.push_back({Edge{pairs[i].edge.blue, pairs[kk].edge.red}, pairs[kk].color});
                    edges.push_back({Edge{pairs[kk].edge.blue, pairs[i].edge.red}, pairs[jj].color});
                    auto out = finish(std::move(edges));
                    if (out.kind == MoveKind::Witness) return out;
                }
            }
        }
        // chain: unmatched blue takes q_j, pair j reaches through pair k
        for (int jj = 0; jj < k_pairs; ++jj) {
            if (!family.has_edge(m, bn, pairs[jj].edge.red)) continue;
            for (int kk = 0; kk < k_pairs; ++kk) {
                if (kk == jj) continue;
                if (!family.has_edge(pairs[kk].color, pairs[jj].edge.blue, pairs[kk].edge.red))
                    continue;
                if (!family.has_edge(pairs[jj].color, pairs[kk].edge.blue, rn)) continue;
                auto edges = keep_except({jj, kk});
                edges.push_back({Edge{bn, pairs[jj].edge.red}, m});
                edges.push_back({Edge{pairs[jj].edge.blue, pairs[kk].edge.red}, pairs[kk].color});
                edges.push_back({Edge{pairs[kk].edge.blue, rn}, pairs[jj].color});
                auto out = finish(std::move(edges));
                if (out.kind == MoveKind::Witness) return out;
            }
        }
    }
    return MoveOutcome::no_move();
}

// ---------------------------------------------------------------------------
// solve pipeline

namespace {

struct GreedySearcher {
    const BipartiteFamily& family;
    gen::SplitMix64& rng;
    std::uint64_t node_cap;
    std::uint64_t nodes{0};
    std::vector<int> blue_order, red_order;

    GreedySearcher(const BipartiteFamily& f, gen::SplitMix64& r, std::uint64_t cap)
        : family(f), rng(r), node_cap(cap) {
        for (int v = 1; v <= f.n(); ++v) {
            blue_order.push_back(v);
            red_order.push_back(v);
        }
        for (std::size_t i = blue_order.size(); i > 1; --i)
            std::swap(blue_order[i - 1], blue_order[rng.below(i)]);
        for (std::size_t i = red_order.size(); i > 1; --i)
            std::swap(red_order[i - 1], red_order[rng.below(i)]);
    }

    std::uint64_t edge_colors(int b, int r) const {
        std::uint64_t mask = 0;
        for (int g = 1; g <= family.graph_count(); ++g)
            if (family.has_edge(g, b, r)) mask |= std::uint64_t{1} << (g - 1);
        return mask;
    }

    // Randomized alternating path builder with bounded backtracking.
    std::optional<RainbowSubgraph> hamiltonian_path() {
        const int n = family.n();
        detail::ColorMatcher matcher(family.graph_count());
        std::vector<VertexId> seq;
        std::uint64_t used_blue = 0, used_red = 0;
        std::optional<RainbowSubgraph> found;
        auto dfs = [&](auto&& self, int pos) -> bool {
            if (++nodes > node_cap) return false;
            if (pos == 2 * n) {
                RainbowSubgraph path;
                path.kind = SubgraphKind::Path;
                for (int i = 0; i + 1 < 2 * n; ++i)
                    path.edges.push_back({make_edge(seq[i], seq[i + 1]), matcher.color_of(i)});
                found = canonicalize(path);
                return true;
            }
            const bool red_slot = pos % 2 == 1;
            for (int v : red_slot ? red_order : blue_order) {
                std::uint64_t& used = red_slot ? used_red : used_blue;
                if ((used >> (v - 1)) & 1u) continue;
                if (pos > 0) {
                    VertexId prev = seq.back();
                    std::uint64_t mask =
                        red_slot ? edge_colors(prev.index, v) : edge_colors(v, prev.index);
                    if (mask == 0 || !matcher.add_edge(mask)) continue;
                }
                seq.push_back(red_slot ? red(v) : blue(v));
                used |= std::uint64_t{1} << (v - 1);
                if (self(self, pos + 1)) return true;
                used &= ~(std::uint64_t{1} << (v - 1));
                seq.pop_back();
                if (pos > 0) matcher.pop_edge();
                if (nodes > node_cap) return false;
            }
            return false;
        };
        dfs(dfs, 0);
        return found;
    }

    // Randomized rainbow matching builder; returns n or n-1 edges (at most
    // one blue vertex skipped).
    std::optional<RainbowSubgraph> near_matching() {
        const int n = family.n();
        detail::ColorMatcher matcher(family.graph_count());
        std::vector<std::pair<int, int>> picked;  // (blue, red)
        std::uint64_t used_red = 0;
        std::optional<RainbowSubgraph> found;
        auto dfs = [&](auto&& self, int bi, bool skipped) -> bool {
            if (++nodes > node_cap) return false;
            if (bi == n) {
                RainbowSubgraph m;
                m.kind = SubgraphKind::Matching;
                for (std::size_t i = 0; i < picked.size(); ++i)
                    m.edges.push_back({Edge{picked[i].first, picked[i].second},
                                       matcher.color_of(static_cast<int>(i))});
                found = canonicalize(m);
                return true;
            }
            const int b = blue_order[bi];
            for (int r : red_order) {
                if ((used_red >> (r - 1)) & 1u) continue;
                std::uint64_t mask = edge_colors(b, r);
                if (mask == 0 || !matcher.add_edge(mask)) continue;
                picked.emplace_back(b, r);
                used_red |= std::uint64_t{1} << (r - 1);
                if (self(self, bi + 1, skipped)) return true;
                used_red &= ~(std::uint64_t{1} << (r - 1));
                picked.pop_back();
                matcher.pop_edge();
                if (nodes > node_cap) return false;
            }
            if (!skipped) return self(self, bi + 1, true);
            return false;
        };
        dfs(dfs, 0, false);
        return found;
    }
};

SolveResult fallback_to_oracle(const BipartiteFamily& family, Target target,
                               const oracle::SearchBudget& budget, SolveResult partial) {
    partial.used_fallback = true;
    oracle::SearchResult res;
    switch (target.kind) {
        case Target::Kind::Hamiltonian:
            res = oracle::find_rainbow_hamiltonian(family, budget);
            break;
        case Target::Kind::Cycle:
            res = oracle::find_rainbow_cycle(family, target.length, budget);
            break;
        case Target::Kind::PerfectMatching:
            res = oracle::find_rainbow_perfect_matching(family, budget);
            break;
    }
    partial.oracle_nodes = res.nodes;
    switch (res.status) {
        case oracle::SearchStatus::Found:
            partial.status = SolveStatus::Found;
            partial.witness = res.witness;
            break;
        case oracle::SearchStatus::None:
            partial.status = SolveStatus::None;
            break;
        case oracle::SearchStatus::BudgetExhausted:
            partial.status = SolveStatus::BudgetExhausted;
            break;
    }
    return partial;
}

constexpr int kRestarts = 10;
constexpr std::uint64_t kGreedyNodeFactor = 400;

// Runs the move pipeline toward a Hamiltonian witness. Returns the witness
// or nullopt (stall), recording statistics and trace states.
std::optional<RainbowSubgraph> hamiltonian_via_moves(const BipartiteFamily& family,
                                                     gen::SplitMix64& rng, MoveStats& stats,
                                                     SolveTrace* trace) {
    const int n = family.n();
    std::set<std::string> seen;
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
        stats.restarts = attempt;
        GreedySearcher greedy(family, rng, kGreedyNodeFactor * n);
        auto path = greedy.hamiltonian_path();
        stats.greedy_nodes += greedy.nodes;
        if (!path) {
            stats.stall_kind = "no-initial-path";
            continue;
        }
        std::optional<RainbowSubgraph> structure = path;
        bool is_path = true;
        std::optional<LabeledCycleState> state;
        for (int step = 0; step < 3 * n; ++step) {
            if (is_path) {
                if (!seen.insert(signature(*structure)).second) break;
                ++stats.rotate_calls;
                MoveOutcome out = rotate_path(*structure, family);
                if (out.kind == MoveKind::NoMove) {
                    stats.stall_kind = "rotate";
                    break;
                }
                if (out.kind == MoveKind::Witness) return out.witness;
                state = out.state;
                is_path = false;
                continue;
            }
            if (trace) trace->states.push_back(*state);
            if (!seen.insert(signature(state->cycle_subgraph()) + "#" +
                             std::to_string(state->pendant->color))
                     .second) {
                stats.stall_kind = "state-repeat";
                break;
            }
            ++stats.close_calls;
            MoveOutcome closed = close_hamiltonian(*state, family);
            if (closed.kind == MoveKind::Witness) return closed.witness;
            ++stats.extend_calls;
            MoveOutcome extended = extend_cycle(state->cycle_subgraph(), family);
            if (extended.kind == MoveKind::NoMove) {
                stats.stall_kind = "extend";
                break;
            }
            if (extended.kind == MoveKind::Witness) {
                structure = extended.witness;  // a fresh Hamiltonian path
                is_path = true;
                continue;
            }
            state = extended.state;
        }
    }
    if (stats.stall_kind.empty()) stats.stall_kind = "restarts-exhausted";
    return std::nullopt;
}

std::optional<RainbowSubgraph> cycle_via_moves(const BipartiteFamily& family, int length,
                                               gen::SplitMix64& rng, MoveStats& stats,
                                               SolveTrace* trace) {
    const int n = family.n();
    auto ham = hamiltonian_via_moves(family, rng, stats, trace);
    if (!ham) return std::nullopt;
    if (length == 2 * n) return ham;

    ++stats.shorten_calls;
    MoveOutcome shorter = shorten_cycle(relabel_to_canonical(*ham, family), family);
    if (shorter.kind != MoveKind::Witness) {
        stats.stall_kind = "shorten";
        return std::nullopt;
    }
    if (length == 2 * n - 2) return shorter.witness;

    LabeledCycleState base = relabel_to_canonical(*shorter.witness, family);
    ++stats.shift_calls;
    MoveOutcome shifted = find_cycle_by_shift_sets(base, family, length);
    if (shifted.kind == MoveKind::Witness) return shifted.witness;
    for (int j = 1; j <= base.length(); ++j) {
        ++stats.bondy_calls;
        auto moves = bondy_pairing_moves(base, family, length, j);
        if (!moves.empty()) return moves.front();
    }
    stats.stall_kind = "length-" + std::to_string(length);
    return std::nullopt;
}

std::optional<RainbowSubgraph> matching_via_moves(const BipartiteFamily& family,
                                                  gen::SplitMix64& rng, MoveStats& stats) {
    const int n = family.n();
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
        stats.restarts = attempt;
        GreedySearcher greedy(family, rng, kGreedyNodeFactor * n);
        auto near = greedy.near_matching();
        stats.greedy_nodes += greedy.nodes;
        if (!near) {
            stats.stall_kind = "no-initial-matching";
            continue;
        }
        if (static_cast<int>(near->edges.size()) == n) return near;
        ++stats.pm_swap_calls;
        MoveOutcome out = pm_swap(*near, family);
        if (out.kind == MoveKind::Witness) return out.witness;
        stats.stall_kind = "pm-swap";
    }
    if (stats.stall_kind.empty()) stats.stall_kind = "restarts-exhausted";
    return std::nullopt;
}

}  // namespace

SolveResult solve(const BipartiteFamily& family, Target target, const oracle::SearchBudget& budget,
                  bool fallback, std::uint64_t seed, SolveTrace* trace) {
    if (!family.structurally_sound())
        throw std::invalid_argument("solve: family has structural errors");
    const int n = family.n();
    const int s = family.graph_count();
    int needed = 0;
    switch (target.kind) {
        case Target::Kind::Hamiltonian:
            needed = 2 * n;
            break;
        case Target::Kind::Cycle:
            if (target.length % 2 != 0 || target.length < 4 || target.length > 2 * n)
                throw std::invalid_argument("solve: cycle length must be even in [4, 2n]");
            needed = target.length;
            break;
        case Target::Kind::PerfectMatching:
            needed = n;
            break;
    }
    if (s < needed)
        throw std::invalid_argument("solve: family provides " + std::to_string(s) +
                                    " graphs but the target needs " + std::to_string(needed));

    SolveResult result;
    gen::SplitMix64 rng(seed);
    std::optional<RainbowSubgraph> witness;
    switch (target.kind) {
        case Target::Kind::Hamiltonian:
            witness = hamiltonian_via_moves(family, rng, result.stats, trace);
            break;
        case Target::Kind::Cycle:
            witness = cycle_via_moves(family, target.length, rng, result.stats, trace);
            break;
        case Target::Kind::PerfectMatching:
            witness = matching_via_moves(family, rng, result.stats);
            break;
    }
    if (witness) {
        if (!verify_rainbow(*witness, family).ok)
            throw std::logic_error("solve: move pipeline produced an invalid witness");
        result.status = SolveStatus::Found;
        result.witness = witness;
        return result;
    }
    result.status = SolveStatus::Stalled;
    if (fallback) return fallback_to_oracle(family, target, budget, result);
    return result;
}

}  // namespace rainbow::solver

#include "rainbow/oracle.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

#include "rainbow/detail/color_matcher.hpp"

namespace rainbow::oracle {

namespace {

using Clock = std::chrono::steady_clock;
using detail::ColorMatcher;

class Searcher {
  public:
    Searcher(const BipartiteFamily& family, const SearchBudget& budget)
        : family_(family),
          budget_(budget),
          n_(family.n()),
          s_(family.graph_count()),
          matcher_(family.graph_count()),
          deadline_set_(budget.time_limit != std::chrono::milliseconds::max()) {
        if (s_ > 64) throw std::invalid_argument("oracle: more than 64 graphs unsupported");
        if (deadline_set_) deadline_ = Clock::now() + budget.time_limit;
        // admissible color mask per potential edge
        color_mask_.assign(n_ * n_, 0);
        for (int g = 1; g <= s_; ++g)
            for (int b = 1; b <= n_; ++b) {
                std::uint64_t adj = family.blue_adjacency(g, b);
                while (adj) {
                    int r = std::countr_zero(adj) + 1;
                    adj &= adj - 1;
                    color_mask_[(b - 1) * n_ + (r - 1)] |= std::uint64_t{1} << (g - 1);
                }
            }
    }

    SearchResult find_cycle(int length) {
        length_ = length;
        seq_.assign(length, 0);
        for (int anchor = 1; anchor <= n_; ++anchor) {
            if (out_of_budget()) break;
            anchor_ = anchor;
            seq_[0] = anchor;
            used_blue_ = std::uint64_t{1} << (anchor - 1);
            used_red_ = 0;
            if (cycle_dfs(1)) return take_found(SubgraphKind::Cycle, true);
        }
        return take_not_found();
    }

    SearchResult find_path() {
        length_ = 2 * n_;
        seq_.assign(length_, 0);
        for (int start = 1; start <= n_; ++start) {
            if (out_of_budget()) break;
            seq_[0] = start;
            used_blue_ = std::uint64_t{1} << (start - 1);
            used_red_ = 0;
            if (path_dfs(1)) return take_found(SubgraphKind::Path, false);
        }
        return take_not_found();
    }

    SearchResult find_matching() {
        seq_.assign(n_, 0);  // seq_[b-1] = partner of p_b
        used_red_ = 0;
        if (matching_dfs(1)) {
            RainbowSubgraph witness;
            witness.kind = SubgraphKind::Matching;
            for (int b = 1; b <= n_; ++b)
                witness.edges.push_back({Edge{b, seq_[b - 1]}, matcher_.color_of(b - 1)});
            return SearchResult{SearchStatus::Found, witness, nodes_};
        }
        return take_not_found();
    }

    long long count_cycles(int length, long long cap) {
        length_ = length;
        cap_ = cap;
        count_ = 0;
        counting_ = true;
        seq_.assign(length, 0);
        for (int anchor = 1; anchor <= n_ && count_ < cap_; ++anchor) {
            anchor_ = anchor;
            seq_[0] = anchor;
            used_blue_ = std::uint64_t{1} << (anchor - 1);
            used_red_ = 0;
            cycle_dfs(1);
        }
        return count_;
    }

  private:
    std::uint64_t edge_mask(int b, int r) const { return color_mask_[(b - 1) * n_ + (r - 1)]; }

    bool out_of_budget() {
        if (exhausted_) return true;
        if (nodes_ >= budget_.max_nodes) exhausted_ = true;
        if (deadline_set_ && (nodes_ & 1023) == 0 && Clock::now() >= deadline_)
            exhausted_ = true;
        return exhausted_;
    }

    // Positions alternate blue (even) and red (odd), 0-based. Cycles are
    // enumerated once each: the anchor is the lowest blue vertex on the
    // cycle and the first red precedes the last red.
    bool cycle_dfs(int pos) {
        ++nodes_;
        if (out_of_budget()) return false;
        if (pos == length_) {
            // closing edge joins the last red back to the anchor
            std::uint64_t closing = edge_mask(seq_[0], seq_[length_ - 1]);
            if (closing == 0) return false;
            if (!matcher_.add_edge(closing)) return false;
            if (counting_) {
                tally_colorings();
                matcher_.pop_edge();
                return false;  // keep enumerating
            }
            return true;
        }
        const bool red_slot = pos % 2 == 1;
        const int prev = seq_[pos - 1];
        for (int v = 1; v <= n_; ++v) {
            if (red_slot) {
                if ((used_red_ >> (v - 1)) & 1u) continue;
                if (pos == length_ - 1 && v < seq_[1]) continue;  // orientation
            } else {
                if (v <= anchor_) continue;  // anchor is the lowest blue
                if ((used_blue_ >> (v - 1)) & 1u) continue;
            }
            std::uint64_t mask = red_slot ? edge_mask(prev, v) : edge_mask(v, seq_[pos - 1]);
            if (mask == 0) continue;
            if (!matcher_.add_edge(mask)) continue;
            seq_[pos] = v;
            if (red_slot)
                used_red_ |= std::uint64_t{1} << (v - 1);
            else
                used_blue_ |= std::uint64_t{1} << (v - 1);
            if (cycle_dfs(pos + 1)) return true;
            if (red_slot)
                used_red_ &= ~(std::uint64_t{1} << (v - 1));
            else
                used_blue_ &= ~(std::uint64_t{1} << (v - 1));
            matcher_.pop_edge();
            if (exhausted_) return false;
        }
        return false;
    }

    bool path_dfs(int pos) {
        ++nodes_;
        if (out_of_budget()) return false;
        if (pos == length_) return true;
        const bool red_slot = pos % 2 == 1;
        const int prev = seq_[pos - 1];
        for (int v = 1; v <= n_; ++v) {
            std::uint64_t& used = red_slot ? used_red_ : used_blue_;
            if ((used >> (v - 1)) & 1u) continue;
            std::uint64_t mask = red_slot ? edge_mask(prev, v) : edge_mask(v, prev);
            if (mask == 0) continue;
            if (!matcher_.add_edge(mask)) continue;
            seq_[pos] = v;
            used |= std::uint64_t{1} << (v - 1);
            if (path_dfs(pos + 1)) return true;
            used &= ~(std::uint64_t{1} << (v - 1));
            matcher_.pop_edge();
            if (exhausted_) return false;
        }
        return false;
    }

    bool matching_dfs(int b) {
        ++nodes_;
        if (out_of_budget()) return false;
        if (b > n_) return true;
        for (int r = 1; r <= n_; ++r) {
            if ((used_red_ >> (r - 1)) & 1u) continue;
            std::uint64_t mask = edge_mask(b, r);
            if (mask == 0) continue;
            if (!matcher_.add_edge(mask)) continue;
            seq_[b - 1] = r;
            used_red_ |= std::uint64_t{1} << (r - 1);
            if (matching_dfs(b + 1)) return true;
            used_red_ &= ~(std::uint64_t{1} << (r - 1));
            matcher_.pop_edge();
            if (exhausted_) return false;
        }
        return false;
    }

    // Counts the injective colorings of the completed cycle sequence by
    // plain DFS over its edges, truncating at the cap.
    void tally_colorings() {
        std::vector<std::uint64_t> masks(length_);
        for (int i = 0; i < length_; ++i) {
            int a = seq_[i], bnext = seq_[(i + 1) % length_];
            masks[i] = i % 2 == 0 ? edge_mask(a, bnext) : edge_mask(bnext, a);
        }
        color_count_dfs(masks, 0, 0);
    }

    void color_count_dfs(const std::vector<std::uint64_t>& masks, int i, std::uint64_t used) {
        if (count_ >= cap_) return;
        if (i == static_cast<int>(masks.size())) {
            ++count_;
            return;
        }
        std::uint64_t options = masks[i] & ~used;
        while (options && count_ < cap_) {
            int c = std::countr_zero(options);
            options &= options - 1;
            color_count_dfs(masks, i + 1, used | (std::uint64_t{1} << c));
        }
    }

    SearchResult take_found(SubgraphKind kind, bool closed) {
        RainbowSubgraph witness;
        witness.kind = kind;
        const int edges = closed ? length_ : length_ - 1;
        for (int i = 0; i < edges; ++i) {
            int a = seq_[i], b = seq_[(i + 1) % length_];
            Edge e = i % 2 == 0 ? Edge{a, b} : Edge{b, a};
            witness.edges.push_back({e, matcher_.color_of(i)});
        }
        return SearchResult{SearchStatus::Found, witness, nodes_};
    }

    SearchResult take_not_found() const {
        return SearchResult{exhausted_ ? SearchStatus::BudgetExhausted : SearchStatus::None,
                            std::nullopt, nodes_};
    }

    const BipartiteFamily& family_;
    SearchBudget budget_;
    int n_;
    int s_;
    ColorMatcher matcher_;
    std::vector<std::uint64_t> color_mask_;
    std::vector<int> seq_;
    std::uint64_t used_blue_{0};
    std::uint64_t used_red_{0};
    int length_{0};
    int anchor_{0};
    std::uint64_t nodes_{0};
    bool exhausted_{false};
    bool deadline_set_{false};
    Clock::time_point deadline_;
    bool counting_{false};
    long long count_{0};
    long long cap_{0};
};

void check_cycle_length(const BipartiteFamily& family, int length) {
    if (length % 2 != 0 || length < 4 || length > 2 * family.n())
        throw std::invalid_argument("cycle length must be even and in [4, 2n]");
}

}  // namespace

SearchResult find_rainbow_cycle(const BipartiteFamily& family, int length,
                                const SearchBudget& budget) {
    check_cycle_length(family, length);
    return Searcher(family, budget).find_cycle(length);
}

SearchResult find_rainbow_hamiltonian(const BipartiteFamily& family, const SearchBudget& budget) {
    return find_rainbow_cycle(family, 2 * family.n(), budget);
}

SearchResult find_rainbow_hamiltonian_path(const BipartiteFamily& family,
                                           const SearchBudget& budget) {
    if (family.n() < 1) throw std::invalid_argument("path search needs n >= 1");
    return Searcher(family, budget).find_path();
}

SearchResult find_rainbow_perfect_matching(const BipartiteFamily& family,
                                           const SearchBudget& budget) {
    return Searcher(family, budget).find_matching();
}

long long count_rainbow_cycles(const BipartiteFamily& family, int length, long long cap) {
    check_cycle_length(family, length);
    if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
    return Searcher(family, SearchBudget::unlimited()).count_cycles(length, cap);
}

}  // namespace rainbow::oracle

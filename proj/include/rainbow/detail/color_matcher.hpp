#ifndef RAINBOW_DETAIL_COLOR_MATCHER_HPP
#define RAINBOW_DETAIL_COLOR_MATCHER_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace rainbow::detail {

// Incremental bipartite matching between a growing edge list and up to 64
// graph indices ("colors"). Adding an edge runs one Kuhn augmentation over
// the colors admitting it; removing the most recent edge frees whatever
// color it currently holds (reroutes performed by later augmentations keep
// earlier edges covered). A partial edge set admits an injective coloring
// iff every add_edge succeeded, so this doubles as an exact feasibility
// prune for sequence-first searches.
class ColorMatcher {
  public:
    explicit ColorMatcher(int color_count) : color_match_(color_count, -1) {}

    bool add_edge(std::uint64_t admissible_colors) {
        edge_colors_.push_back(admissible_colors);
        edge_match_.push_back(-1);
        int e = static_cast<int>(edge_match_.size()) - 1;
        std::uint64_t visited = 0;
        if (augment(e, visited)) return true;
        edge_colors_.pop_back();
        edge_match_.pop_back();
        return false;
    }

    void pop_edge() {
        color_match_[edge_match_.back()] = -1;
        edge_match_.pop_back();
        edge_colors_.pop_back();
    }

    int size() const { return static_cast<int>(edge_match_.size()); }

    /// 1-based color currently assigned to the edge added i-th.
    int color_of(int i) const { return edge_match_[i] + 1; }

  private:
    bool augment(int e, std::uint64_t& visited) {
        std::uint64_t candidates = edge_colors_[e] & ~visited;
        while (candidates) {
            int c = std::countr_zero(candidates);
            candidates &= candidates - 1;
            visited |= std::uint64_t{1} << c;
            if (color_match_[c] == -1 || augment(color_match_[c], visited)) {
                color_match_[c] = e;
                edge_match_[e] = c;
                return true;
            }
        }
        return false;
    }

    std::vector<std::uint64_t> edge_colors_;
    std::vector<int> edge_match_;
    std::vector<int> color_match_;
};

}  // namespace rainbow::detail

#endif

#include "rainbow/constructions.hpp"

#include <stdexcept>

namespace rainbow {

BipartiteFamily complete_family(int n, int s) {
    if (n < 1 || s < 1) throw std::invalid_argument("complete_family: need n >= 1, s >= 1");
    std::vector<Edge> all;
    for (int b = 1; b <= n; ++b)
        for (int r = 1; r <= n; ++r) all.push_back({b, r});
    return BipartiteFamily(n, std::vector<std::vector<Edge>>(s, all));
}

BipartiteFamily two_blocks_family(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("two_blocks_family: n must be even and >= 4");
    const int half = n / 2;
    std::vector<Edge> edges;
    for (int b = 1; b <= n; ++b) {
        bool low = b <= half;
        for (int r = 1; r <= n; ++r)
            if ((r <= half) == low) edges.push_back({b, r});
    }
    return BipartiteFamily(n, std::vector<std::vector<Edge>>(2 * n, edges));
}

BipartiteFamily pm_blocks_family(int n) {
    if (n < 2) throw std::invalid_argument("pm_blocks_family: n must be >= 2");
    const int first = (n + 1) / 2;  // |A| = |C| = ceil(n/2), contiguous prefix
    auto in_first = [first](int i) { return i <= first; };
    std::vector<Edge> aligned, crossed;
    for (int b = 1; b <= n; ++b) {
        for (int r = 1; r <= n; ++r) {
            if (in_first(b) == in_first(r))
                aligned.push_back({b, r});  // (A,C) and (B,D)
            else
                crossed.push_back({b, r});  // (A,D) and (B,C)
        }
    }
    std::vector<std::vector<Edge>> graphs(n - 1, aligned);
    graphs.push_back(crossed);
    return BipartiteFamily(n, std::move(graphs));
}

BipartiteFamily hexagon_family() {
    std::vector<Edge> hexagon = {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {1, 3}};
    return identical_family(hexagon, 3, 6);
}

BipartiteFamily identical_family(const std::vector<Edge>& edges, int n, int s) {
    if (n < 1 || s < 1) throw std::invalid_argument("identical_family: need n >= 1, s >= 1");
    BipartiteFamily family(n, std::vector<std::vector<Edge>>(s, edges));
    if (!family.structurally_sound())
        throw std::invalid_argument("identical_family: " + family.structural_errors().front());
    return family;
}

}  // namespace rainbow

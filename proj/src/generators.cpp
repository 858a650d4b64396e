#include "rainbow/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace rainbow::gen {

namespace {

void check_spec(const GenSpec& spec) {
    if (spec.n < 2 || spec.n > 64) throw std::invalid_argument("GenSpec: n must be in [2, 64]");
    if (spec.graph_count < 1) throw std::invalid_argument("GenSpec: graph_count must be >= 1");
    if (spec.slack < 0) throw std::invalid_argument("GenSpec: slack must be >= 0");
}

struct DegreeTable {
    std::vector<int> blue;
    std::vector<int> red;
};

}  // namespace

BipartiteFamily random_valid_family(const GenSpec& spec) {
    check_spec(spec);
    const int n = spec.n;
    auto thresholds = degree_thresholds(n);
    const int keep_red = std::min(n, thresholds.red_min + spec.slack);
    const int keep_blue = std::min(n, thresholds.blue_min + spec.slack);

    SplitMix64 rng(spec.seed);
    std::vector<std::vector<Edge>> graphs;
    graphs.reserve(spec.graph_count);
    for (int g = 0; g < spec.graph_count; ++g) {
        std::vector<Edge> order;
        for (int b = 1; b <= n; ++b)
            for (int r = 1; r <= n; ++r) order.push_back({b, r});
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);

        DegreeTable deg{std::vector<int>(n + 1, n), std::vector<int>(n + 1, n)};
        std::vector<std::vector<bool>> present(n + 1, std::vector<bool>(n + 1, true));
        for (const Edge& e : order) {
            if (deg.blue[e.blue] > keep_blue && deg.red[e.red] > keep_red) {
                present[e.blue][e.red] = false;
                --deg.blue[e.blue];
                --deg.red[e.red];
            }
        }
        std::vector<Edge> kept;
        for (int b = 1; b <= n; ++b)
            for (int r = 1; r <= n; ++r)
                if (present[b][r]) kept.push_back({b, r});
        graphs.push_back(std::move(kept));
    }
    return BipartiteFamily(n, std::move(graphs));
}

BipartiteFamily random_near_miss_family(const GenSpec& spec) {
    check_spec(spec);
    if (spec.n == 2) throw std::invalid_argument("random_near_miss_family: n = 2 is rejected");

    // Build on a base with one unit of extra slack, then strip one seeded
    // vertex down to one edge below its threshold. The deletion partners
    // are distinct, so each loses a single edge and stays at or above its
    // own threshold: exactly one violation remains.
    GenSpec base = spec;
    base.slack = spec.slack + 1;
    BipartiteFamily valid = random_valid_family(base);
    const int n = spec.n;
    const int s = valid.graph_count();
    auto thresholds = degree_thresholds(n);

    std::vector<std::vector<Edge>> graphs;
    for (int g = 1; g <= s; ++g) graphs.push_back(valid.edges(g));

    SplitMix64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    const int g = static_cast<int>(rng.below(s));
    const bool hit_red = rng.below(2) == 0;
    const int v = static_cast<int>(rng.below(n)) + 1;
    const int keep = (hit_red ? thresholds.red_min : thresholds.blue_min) - 1;

    std::vector<Edge> incident;
    for (const Edge& e : graphs[g])
        if ((hit_red ? e.red : e.blue) == v) incident.push_back(e);
    for (std::size_t i = incident.size(); i > 1; --i)
        std::swap(incident[i - 1], incident[rng.below(i)]);
    incident.resize(incident.size() - keep);
    for (const Edge& e : incident) std::erase(graphs[g], e);

    return BipartiteFamily(n, std::move(graphs));
}

}  // namespace rainbow::gen

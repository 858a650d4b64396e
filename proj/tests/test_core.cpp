#include <algorithm>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/core.hpp"

using namespace rainbow;

namespace {

RainbowSubgraph four_cycle(std::vector<int> colors) {
    // p1 q1 p2 q2 p1
    RainbowSubgraph sub;
    sub.kind = SubgraphKind::Cycle;
    sub.edges = {{Edge{1, 1}, colors[0]},
                 {Edge{2, 1}, colors[1]},
                 {Edge{2, 2}, colors[2]},
                 {Edge{1, 2}, colors[3]}};
    return sub;
}

}  // namespace

TEST_CASE("degree thresholds match the strict/weak half bounds") {
    CHECK(degree_thresholds(4) == DegreeThresholds{3, 2});
    CHECK(degree_thresholds(5) == DegreeThresholds{3, 3});
    CHECK(degree_thresholds(3) == DegreeThresholds{2, 2});
    CHECK(degree_thresholds(1) == DegreeThresholds{1, 1});
}

TEST_CASE("threshold monotonicity and gap") {
    DegreeThresholds prev{0, 0};
    for (int n = 1; n <= 100; ++n) {
        auto t = degree_thresholds(n);
        CHECK(t.red_min >= prev.red_min);
        CHECK(t.blue_min >= prev.blue_min);
        int gap = t.red_min - t.blue_min;
        if (n % 2 == 0) {
            CHECK(gap == 1);
        } else {
            CHECK(gap == 0);
        }
        prev = t;
    }
}

TEST_CASE("validate_family accepts complete families for the cycle role") {
    auto report = validate_family(complete_family(3, 6), FamilyRole::CycleFamily);
    CHECK(report.pass());
    CHECK(report.per_graph.size() == 6);
    for (const auto& g : report.per_graph) {
        CHECK(g.min_red_degree == 3);
        CHECK(g.min_blue_degree == 3);
    }
}

TEST_CASE("validate_family rejects the two-blocks construction") {
    auto report = validate_family(two_blocks_family(4), FamilyRole::CycleFamily);
    CHECK_FALSE(report.pass());
    REQUIRE_FALSE(report.violations.empty());
    // every red vertex sits at degree 2, one below the strict threshold 3
    for (const auto& v : report.violations) {
        CHECK(v.degree == 2);
        CHECK(v.required == (v.vertex.cls == VertexClass::Red ? 3 : 2));
    }
}

TEST_CASE("validate_family rejects the pm-blocks construction for matchings") {
    auto report = validate_family(pm_blocks_family(4), FamilyRole::MatchingFamily);
    CHECK_FALSE(report.pass());
    bool red_violation = std::any_of(report.violations.begin(), report.violations.end(),
                                     [](const DegreeViolation& v) { return v.degree == 2 && v.required == 3; });
    CHECK(red_violation);
}

TEST_CASE("validate_family reports structural errors instead of crashing") {
    BipartiteFamily family(2, {{{1, 1}, {1, 1}}, {{1, 5}}, {{1, 1}, {2, 2}}, {{2, 1}}});
    CHECK_FALSE(family.structurally_sound());
    auto report = validate_family(family, FamilyRole::CycleFamily);
    CHECK_FALSE(report.pass());
    CHECK(report.structural_errors.size() == 2);  // duplicate + out of range
}

TEST_CASE("validate_family checks graph counts and tiny n") {
    CHECK_FALSE(validate_family(complete_family(3, 5), FamilyRole::CycleFamily).pass());
    CHECK_FALSE(validate_family(complete_family(3, 6), FamilyRole::MatchingFamily).pass());
    CHECK(validate_family(complete_family(3, 3), FamilyRole::MatchingFamily).pass());
    // n = 1 admits no even cycle, whatever the graph count
    CHECK_FALSE(validate_family(complete_family(1, 2), FamilyRole::CycleFamily).pass());
    CHECK(validate_family(complete_family(1, 1), FamilyRole::MatchingFamily).pass());
}

TEST_CASE("validated families carry at least n * blue_min edges per graph") {
    for (int n : {2, 3, 4, 5}) {
        auto family = complete_family(n, 2 * n);
        auto report = validate_family(family, FamilyRole::CycleFamily);
        REQUIRE(report.pass());
        for (int g = 1; g <= family.graph_count(); ++g)
            CHECK(family.edge_count(g) >= n * report.thresholds.blue_min);
    }
}

TEST_CASE("verify_rainbow accepts a proper 4-cycle and rejects color reuse") {
    auto family = complete_family(2, 4);
    CHECK(verify_rainbow(four_cycle({1, 2, 3, 4}), family).ok);

    auto bad = verify_rainbow(four_cycle({1, 1, 3, 4}), family);
    CHECK_FALSE(bad.ok);
    REQUIRE_FALSE(bad.reasons.empty());
    CHECK(bad.reasons.front() == "non-injective colors");
}

TEST_CASE("verify_rainbow rejects edges missing from the assigned graph") {
    // graph 2 lacks the edge p2 q1
    BipartiteFamily family(2, {{{1, 1}, {1, 2}, {2, 1}, {2, 2}},
                               {{1, 1}, {1, 2}, {2, 2}},
                               {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
                               {{1, 1}, {1, 2}, {2, 1}, {2, 2}}});
    auto res = verify_rainbow(four_cycle({1, 2, 3, 4}), family);
    CHECK_FALSE(res.ok);
}

TEST_CASE("verify_rainbow checks shapes") {
    auto family = complete_family(3, 6);

    RainbowSubgraph matching;
    matching.kind = SubgraphKind::Matching;
    matching.edges = {{Edge{1, 1}, 1}, {Edge{1, 2}, 2}};
    CHECK_FALSE(verify_rainbow(matching, family).ok);  // shares p1
    matching.edges = {{Edge{1, 1}, 1}, {Edge{2, 2}, 2}};
    CHECK(verify_rainbow(matching, family).ok);

    RainbowSubgraph path;
    path.kind = SubgraphKind::Path;
    path.edges = {{Edge{1, 1}, 1}, {Edge{2, 1}, 2}, {Edge{2, 2}, 3}};
    CHECK(verify_rainbow(path, family).ok);
    path.edges = {{Edge{1, 1}, 1}, {Edge{2, 2}, 2}};
    CHECK_FALSE(verify_rainbow(path, family).ok);  // not a chain

    RainbowSubgraph two_cycle;
    two_cycle.kind = SubgraphKind::Cycle;
    two_cycle.edges = {{Edge{1, 1}, 1}, {Edge{1, 1}, 2}};
    CHECK_FALSE(verify_rainbow(two_cycle, family).ok);
}

TEST_CASE("canonicalize normalizes rotation and reflection") {
    auto canon = canonicalize(four_cycle({1, 2, 3, 4}));
    // same cycle entered rotated and reflected
    RainbowSubgraph rotated;
    rotated.kind = SubgraphKind::Cycle;
    rotated.edges = {{Edge{2, 1}, 2}, {Edge{2, 2}, 3}, {Edge{1, 2}, 4}, {Edge{1, 1}, 1}};
    RainbowSubgraph reflected;
    reflected.kind = SubgraphKind::Cycle;
    reflected.edges = {{Edge{1, 2}, 4}, {Edge{2, 2}, 3}, {Edge{2, 1}, 2}, {Edge{1, 1}, 1}};
    CHECK(canonicalize(rotated) == canon);
    CHECK(canonicalize(reflected) == canon);

    auto seq = vertex_sequence(canon);
    CHECK(seq.front() == blue(1));
    CHECK(seq[1] == red(1));  // oriented toward the smaller red neighbor
}

TEST_CASE("canonicalize orients paths and sorts matchings") {
    RainbowSubgraph path;
    path.kind = SubgraphKind::Path;
    path.edges = {{Edge{2, 2}, 3}, {Edge{2, 1}, 2}, {Edge{1, 1}, 1}};
    auto canon = canonicalize(path);
    auto seq = vertex_sequence(canon);
    CHECK(seq.front().cls == VertexClass::Blue);  // blue endpoint first

    RainbowSubgraph matching;
    matching.kind = SubgraphKind::Matching;
    matching.edges = {{Edge{3, 1}, 2}, {Edge{1, 3}, 1}, {Edge{2, 2}, 3}};
    auto sorted = canonicalize(matching);
    CHECK(sorted.edges[0].edge.blue == 1);
    CHECK(sorted.edges[1].edge.blue == 2);
    CHECK(sorted.edges[2].edge.blue == 3);
}

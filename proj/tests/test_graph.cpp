#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "geogirth/graph.hpp"
#include "support/testkit.hpp"

namespace geogirth {
namespace {

using testkit::sites;

// Hop girth by exhaustive simple-path search, for tiny graphs only.
int exhaustive_hop_girth(const UndirectedGraph& g) {
    const int n = static_cast<int>(g.vertex_count());
    int best = n + 1;
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    auto dfs = [&](auto&& self, int start, int v, int hops) -> void {
        if (hops + 1 >= best) return;
        for (const Neighbor& nb : g.neighbors(v)) {
            if (nb.v == start && hops >= 2) best = std::min(best, hops + 1);
            // Only extend through vertices above the start, so each cycle is
            // enumerated from its smallest vertex.
            if (nb.v <= start || on[static_cast<std::size_t>(nb.v)]) continue;
            on[static_cast<std::size_t>(nb.v)] = 1;
            self(self, start, nb.v, hops + 1);
            on[static_cast<std::size_t>(nb.v)] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        on[static_cast<std::size_t>(s)] = 1;
        dfs(dfs, s, s, 0);
        on[static_cast<std::size_t>(s)] = 0;
    }
    return best <= n ? best : 0;
}

TEST(DiskGraphBrute, CollinearAndSingleton) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {4, 0, 1}});
    const UndirectedGraph g = build_disk_graph_brute(s);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_TRUE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(1, 0));
    EXPECT_EQ(build_disk_graph_brute(sites({{0, 0, 1}})).edge_count(), 0u);
}

TEST(DiskGraphBrute, EdgeCountMatchesRecountAndWeights) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 64, 64);
        const UndirectedGraph g = build_disk_graph_brute(s);
        std::size_t count = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const bool e = disk_edge(s[i], s[j]);
                count += e;
                EXPECT_EQ(e, g.has_edge(static_cast<int>(i), static_cast<int>(j)));
            }
            for (const Neighbor& nb : g.neighbors(static_cast<int>(i))) {
                EXPECT_NE(nb.v, static_cast<int>(i));
                EXPECT_EQ(nb.w, dist(s[i], s[static_cast<std::size_t>(nb.v)]));
            }
        }
        EXPECT_EQ(g.edge_count(), count);
    }
}

TEST(TxGraphBrute, ThreeSiteExampleHasAllSixArcs) {
    const SiteSet s = sites({{0, 0, 2}, {1, 0, 3}, {0.5, 0.5, 1}});
    const DirectedGraph g = build_tx_graph_brute(s);
    EXPECT_EQ(g.arc_count(), 6u);
    for (int u = 0; u < 3; ++u) {
        for (int v = 0; v < 3; ++v) {
            if (u != v) { EXPECT_TRUE(g.has_arc(u, v)) << u << "->" << v; }
        }
    }
    EXPECT_EQ(build_tx_graph_brute(sites({{0, 0, 1}})).arc_count(), 0u);
}

TEST(TxGraphBrute, ArcSetMatchesPredicateScan) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 64, 64, testkit::Workload::Transmission);
        const DirectedGraph g = build_tx_graph_brute(s);
        std::size_t count = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (i == j) continue;
                const bool a = tx_edge(s[i], s[j]);
                count += a;
                EXPECT_EQ(a, g.has_arc(static_cast<int>(i), static_cast<int>(j)));
            }
        }
        EXPECT_EQ(g.arc_count(), count);
    }
}

TEST(BruteTriangle, PerimeterFourExample) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {0.75, 1, 1}});
    const auto t = brute_triangle(s, build_disk_graph_brute(s));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->sorted_ids(), (std::array<int, 3>{0, 1, 2}));
    EXPECT_DOUBLE_EQ(t->perimeter, 4.0);
}

TEST(BruteTriangle, PathHasNone) {
    const SiteSet s = sites({{0, 0, 0.6}, {1, 0, 0.6}, {2, 0, 0.6}, {3, 0, 0.6}});
    EXPECT_FALSE(brute_triangle(s, build_disk_graph_brute(s)).has_value());
    EXPECT_FALSE(brute_shortest_triangle(s, build_disk_graph_brute(s)).has_value());
}

TEST(BruteTriangle, DirectedExampleFollowsArcs) {
    const SiteSet s = sites({{0, 0, 2}, {1, 0, 3}, {0.5, 0.5, 1}});
    const DirectedGraph g = build_tx_graph_brute(s);
    const auto t = brute_triangle(s, g);
    ASSERT_TRUE(t.has_value());
    for (int i = 0; i < 3; ++i) { EXPECT_TRUE(g.has_arc(t->v[i], t->v[(i + 1) % 3])); }
    const auto shortest = brute_shortest_triangle(s, g);
    ASSERT_TRUE(shortest.has_value());
    EXPECT_NEAR(shortest->perimeter, 1.0 + std::sqrt(2.0), 1e-15);
}

TEST(BruteShortestTriangle, PicksTheShorterOfTwo) {
    // The second triangle is the first scaled by 1.5 and moved far away.
    const SiteSet s = sites({{10, 0, 1.5}, {12.25, 0, 1.5}, {11.125, 1.5, 1.5}, {0, 0, 1}, {1.5, 0, 1}, {0.75, 1, 1}});
    const auto t = brute_shortest_triangle(s, build_disk_graph_brute(s));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->sorted_ids(), (std::array<int, 3>{3, 4, 5}));
    EXPECT_DOUBLE_EQ(t->perimeter, 4.0);
    const auto other = make_triangle(s, 0, 1, 2);
    EXPECT_DOUBLE_EQ(other.perimeter, 6.0);
    EXPECT_TRUE(triangle_less(*t, other));
}

TEST(BruteGirth, SquareAndTree) {
    const SiteSet square = sites({{0, 0, 0.5}, {1, 0, 0.5}, {1, 1, 0.5}, {0, 1, 0.5}});
    EXPECT_EQ(brute_girth_unweighted(build_disk_graph_brute(square)), 4);
    const SiteSet star = sites({{0, 0, 1}, {2, 0, 1}, {-2, 0, 1}, {0, 2, 1}});
    EXPECT_FALSE(brute_girth_unweighted(build_disk_graph_brute(star)).has_value());
}

TEST(BruteGirth, MatchesExhaustiveSearchOnSmallSubsets) {
    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 64, 64);
        std::vector<int> ids(s.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(12);
        const SiteSet sub = s.subset(ids);
        const UndirectedGraph g = build_disk_graph_brute(sub);
        const int exhaustive = exhaustive_hop_girth(g);
        const auto got = brute_girth_unweighted(g);
        EXPECT_EQ(got.value_or(0), exhaustive) << seed;
    }
}

TEST(BruteMinWeightCycle, UnitSquare) {
    const SiteSet square = sites({{0, 0, 0.5}, {1, 0, 0.5}, {1, 1, 0.5}, {0, 1, 0.5}});
    const auto c = brute_min_weight_cycle(build_disk_graph_brute(square));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->hops(), 4u);
    EXPECT_DOUBLE_EQ(c->length, 4.0);
}

TEST(BruteMinWeightCycle, SquareBeatsLongerTriangle) {
    // A 3-4-5 triangle (perimeter 12) and a square of side 2.75 (length 11)
    // without diagonals, far apart.
    const SiteSet s = sites({{0, 0, 2.5},
                             {3, 0, 2.5},
                             {0, 4, 2.5},
                             {100, 100, 1.4},
                             {102.75, 100, 1.4},
                             {102.75, 102.75, 1.4},
                             {100, 102.75, 1.4}});
    const UndirectedGraph g = build_disk_graph_brute(s);
    EXPECT_EQ(g.edge_count(), 7u);
    const auto c = brute_min_weight_cycle(g);
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(c->length, 11.0, 1e-12);
    EXPECT_EQ(c->hops(), 4u);
}

TEST(BruteMinWeightCycle, SanityBoundAndDeterminism) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 10, 48);
        const UndirectedGraph g = build_disk_graph_brute(s);
        const auto c = brute_min_weight_cycle(g);
        EXPECT_TRUE(testkit::same(c, brute_min_weight_cycle(g)));
        if (!c) continue;
        double shortest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c->vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < c->vertices.size(); ++j) {
                shortest = std::min(shortest, dist(s[static_cast<std::size_t>(c->vertices[i])],
                                                   s[static_cast<std::size_t>(c->vertices[j])]));
            }
        }
        EXPECT_GE(c->length, 3.0 * shortest * (1.0 - 1e-12));
        EXPECT_TRUE(testkit::rel_close(c->length, cycle_length(s, c->vertices)));
    }
}

TEST(Remap, MapsBackToParentIds) {
    const std::vector<int> to_parent{7, 3, 9};
    const Triangle t = remap(Triangle{{0, 1, 2}, 1.5}, to_parent);
    EXPECT_EQ(t.v, (std::array<int, 3>{7, 3, 9}));
    EXPECT_EQ(t.perimeter, 1.5);
    const Cycle c = remap(Cycle{{2, 0, 1}, 2.0}, to_parent);
    EXPECT_EQ(c.vertices, (std::vector<int>{9, 7, 3}));
}

TEST(UndirectedGraph, DumpFormat) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {4, 0, 1}});
    std::ostringstream out;
    build_disk_graph_brute(s).dump(out);
    std::istringstream in(out.str());
    int u = -1, v = -1;
    double w = 0.0;
    ASSERT_TRUE(in >> u >> v >> w);
    EXPECT_EQ(u, 0);
    EXPECT_EQ(v, 1);
    EXPECT_DOUBLE_EQ(w, 1.5);
    EXPECT_FALSE(in >> u);
}

TEST(UndirectedGraph, FromEdgesDropsDuplicatesAndLoops) {
    const SiteSet s = sites({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 1}, {1, 2}};
    const UndirectedGraph g = UndirectedGraph::from_edges(s, edges);
    EXPECT_EQ(g.edge_count(), 2u);
}

}  // namespace
}  // namespace geogirth

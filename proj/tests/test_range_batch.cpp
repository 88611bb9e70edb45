#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "geogirth/diagnostics.hpp"
#include "geogirth/quadtree.hpp"
#include "geogirth/radius_tree.hpp"
#include "geogirth/range_search.hpp"
#include "support/testkit.hpp"

namespace geogirth {
namespace {

using testkit::sites;

SiteSet radii_only(std::initializer_list<double> radii) {
    std::vector<Site> v;
    double x = 0.0;
    for (double r : radii) v.push_back({0, x += 1.0, 0.0, r});
    return SiteSet(std::move(v));
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Root-to-cell sequence of child positions with NW, NE, SW, SE = 0..3.
std::vector<int> cell_path(const GridCell& c) {
    std::vector<int> path;
    for (int i = c.level - 1; i >= 0; --i) {
        const int xb = static_cast<int>((c.ix >> i) & 1u), yb = static_cast<int>((c.iy >> i) & 1u);
        path.push_back((yb ? 0 : 2) + xb);
    }
    return path;
}

int path_compare(const GridCell& a, const GridCell& b) {
    const std::vector<int> pa = cell_path(a), pb = cell_path(b);
    const std::size_t k = std::min(pa.size(), pb.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (pa[i] != pb[i]) return pa[i] < pb[i] ? -1 : 1;
    }
    if (pa.size() == pb.size()) return 0;
    return pa.size() > pb.size() ? -1 : 1;  // the contained cell comes first
}

GridCell random_cell(std::mt19937_64& rng, int max_level) {
    GridCell c;
    c.level = static_cast<int>(rng() % static_cast<std::uint64_t>(max_level + 1));
    const std::uint64_t mask = c.level == 0 ? 0 : (~std::uint64_t{0} >> (64 - c.level));
    c.ix = rng() & mask;
    c.iy = rng() & mask;
    return c;
}

bool in_cell(Point p, const GridCell& c) {
    return point_cell(p).ancestor(c.level) == c;
}

TEST(RadiusTree, Shapes) {
    const RadiusTree one(radii_only({1.0}));
    EXPECT_EQ(one.nodes().size(), 1u);
    EXPECT_EQ(std::vector<int>(one.interval(0).begin(), one.interval(0).end()), std::vector<int>{0});

    const RadiusTree four(radii_only({3.0, 1.0, 4.0, 2.0}));
    const auto root = four.interval(four.root());
    EXPECT_EQ(std::vector<int>(root.begin(), root.end()), (std::vector<int>{1, 3, 0, 2}));
    const RadiusTreeNode& r = four.node(four.root());
    const auto left = four.interval(r.left), right = four.interval(r.right);
    EXPECT_EQ(std::vector<int>(left.begin(), left.end()), (std::vector<int>{1, 3}));
    EXPECT_EQ(std::vector<int>(right.begin(), right.end()), (std::vector<int>{0, 2}));
}

TEST(RadiusTree, IntervalSizesAndOrder) {
    const SiteSet s = testkit::random_instance(3, 200, 200);
    const RadiusTree t(s);
    std::size_t total = 0;
    for (int v = 0; v < static_cast<int>(t.nodes().size()); ++v) {
        const auto iv = t.interval(v);
        total += iv.size();
        for (std::size_t i = 1; i < iv.size(); ++i) {
            EXPECT_TRUE(radius_less(s[static_cast<std::size_t>(iv[i - 1])], s[static_cast<std::size_t>(iv[i])]));
        }
        const RadiusTreeNode& nd = t.node(v);
        if (nd.left >= 0) { EXPECT_EQ(t.interval(nd.left).size() + t.interval(nd.right).size(), iv.size()); }
        else EXPECT_EQ(iv.size(), 1u);
    }
    EXPECT_LE(total, 2 * s.size() * static_cast<std::size_t>(std::ceil(std::log2(200.0))));
}

TEST(RadiusTree, CanonicalNodesPartitionQueries) {
    const SiteSet s = testkit::random_instance(8, 300, 300);
    const RadiusTree t(s);
    EXPECT_EQ(t.canonical_nodes_radius(0.0, 1e9), std::vector<int>{t.root()});
    EXPECT_TRUE(t.canonical_nodes_radius(1e8, 1e9).empty());
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    for (int q = 0; q < 10000; ++q) {
        double r1 = u(rng), r2 = u(rng);
        if (r1 > r2) std::swap(r1, r2);
        const bool ray = q % 5 == 0;
        const std::vector<int> nodes = ray ? t.canonical_nodes_ray(r1) : t.canonical_nodes_radius(r1, r2);
        std::vector<int> got;
        for (int v : nodes) got.insert(got.end(), t.interval(v).begin(), t.interval(v).end());
        std::vector<int> expected;
        for (const Site& x : s) {
            if (x.r >= r1 && (ray || x.r < r2)) expected.push_back(x.id);
        }
        const std::size_t raw = got.size();
        got = sorted(got);
        EXPECT_EQ(std::unique(got.begin(), got.end()) - got.begin(), static_cast<std::ptrdiff_t>(raw));
        ASSERT_EQ(got, expected) << q;
        EXPECT_LE(nodes.size(), 2 * static_cast<std::size_t>(std::ceil(std::log2(300.0))));
    }
}

TEST(ZOrder, FixedChildOrder) {
    const GridCell nw{1, 0, 1}, ne{1, 1, 1}, sw{1, 0, 0}, se{1, 1, 0}, root{};
    EXPECT_TRUE(z_less(nw, se));
    EXPECT_TRUE(z_less(nw, ne));
    EXPECT_TRUE(z_less(ne, sw));
    EXPECT_TRUE(z_less(sw, se));
    EXPECT_TRUE(z_less(se, root));
    EXPECT_EQ(child_slot(0, 1), 0);
    EXPECT_EQ(child_slot(1, 1), 1);
    EXPECT_EQ(child_slot(0, 0), 2);
    EXPECT_EQ(child_slot(1, 0), 3);
    const GridCell inner{3, 1, 6};
    EXPECT_TRUE(nw.contains(inner));
    EXPECT_TRUE(z_less(inner, nw));
}

TEST(ZOrder, MatchesPathExpansion) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100000; ++i) {
        const GridCell a = random_cell(rng, 20);
        // Half the pairs are related by containment.
        const GridCell b = i % 2 ? random_cell(rng, 20) : a.ancestor(static_cast<int>(rng() % (a.level + 1)));
        ASSERT_EQ(z_compare(a, b), path_compare(a, b)) << i;
    }
}

TEST(ZOrder, StrictTotalOrder) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100000; ++i) {
        const GridCell a = random_cell(rng, 6), b = random_cell(rng, 6), c = random_cell(rng, 6);
        EXPECT_EQ(z_compare(a, b), -z_compare(b, a));
        EXPECT_EQ(z_compare(a, b) == 0, a == b);
        if (z_less(a, b) && z_less(b, c)) { EXPECT_TRUE(z_less(a, c)); }
    }
}

TEST(Quadtree, SingleSite) {
    const SiteSet s = sites({{0.3, 0.6, 0.01}});
    const LinearizedQuadtree L = linearize(build_compressed_quadtree(s), s);
    ASSERT_GE(L.size(), 1u);
    EXPECT_EQ(L.cells.back(), GridCell{});
    EXPECT_EQ(L.sites, std::vector<int>{0});
}

TEST(Quadtree, QuadrantCenters) {
    const SiteSet s = sites({{0.75, 0.25, 0.01}, {0.25, 0.25, 0.01}, {0.75, 0.75, 0.01}, {0.25, 0.75, 0.01}});
    const CompressedQuadtree tree = build_compressed_quadtree(s);
    ASSERT_GE(tree.root, 0);
    EXPECT_EQ(tree.nodes[static_cast<std::size_t>(tree.root)].children.size(), 4u);
    const LinearizedQuadtree L = linearize(tree, s);
    const std::vector<GridCell> expected{{1, 0, 1}, {1, 1, 1}, {1, 0, 0}, {1, 1, 0}, {}};
    EXPECT_EQ(L.cells, expected);
    EXPECT_EQ(L.sites, (std::vector<int>{3, 2, 1, 0}));
}

TEST(Quadtree, RandomInstancesAreLinearAndSorted) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 500, 500).normalized();
        const CompressedQuadtree tree = build_compressed_quadtree(s);
        EXPECT_LE(tree.nodes.size(), 2 * s.size());
        const LinearizedQuadtree L = linearize(tree, s);
        EXPECT_EQ(L.size(), tree.nodes.size());
        for (std::size_t i = 1; i < L.size(); ++i) { EXPECT_TRUE(z_less(L.cells[i - 1], L.cells[i])); }
        EXPECT_EQ(sorted(L.sites).size(), s.size());
        std::size_t leaves = 0;
        for (std::size_t i = 0; i < L.size(); ++i) {
            for (int site : L.sites_of(i)) { EXPECT_TRUE(in_cell(s[static_cast<std::size_t>(site)].center(), L.cells[i])); }
            if (L.is_leaf(i)) ++leaves;
        }
        EXPECT_EQ(leaves, s.size());
    }
}

TEST(Quadtree, DescendedTreesMatchFromScratch) {
    const SiteSet s = testkit::random_instance(12, 200, 200);
    const SiteSet nz = s.normalized();
    const RadiusTree t(s);
    const std::vector<LinearizedQuadtree> all = descend_quadtrees(t, nz);
    ASSERT_EQ(all.size(), t.nodes().size());
    for (int v = 0; v < static_cast<int>(t.nodes().size()); ++v) {
        const LinearizedQuadtree scratch = linearize(build_compressed_quadtree(nz, t.interval(v)), nz);
        const LinearizedQuadtree& got = all[static_cast<std::size_t>(v)];
        EXPECT_EQ(got.cells, scratch.cells) << v;
        EXPECT_EQ(got.sites, scratch.sites) << v;
        EXPECT_EQ(got.first, scratch.first) << v;
    }
    const LinearizedQuadtree root = linearize(build_compressed_quadtree(nz), nz);
    EXPECT_EQ(all[static_cast<std::size_t>(t.root())].cells, root.cells);
}

TEST(ZPredecessor, Examples) {
    const SiteSet s = sites({{0.8, 0.2, 0.01}, {0.9, 0.1, 0.01}});
    const LinearizedQuadtree L = linearize(build_compressed_quadtree(s), s);
    const GridCell nw{1, 0, 1};
    EXPECT_FALSE(z_predecessor(L, nw).has_value());
    EXPECT_TRUE(sites_in_cell(L, nw).empty());
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (!L.is_leaf(i)) continue;
        const auto p = z_predecessor(L, L.cells[i]);
        ASSERT_TRUE(p.has_value());
        EXPECT_EQ(*p, i);
    }
}

// The predecessor tau of sigma answers the cell query: sigma holds tau's
// sites when it contains tau, and no site when the two are disjoint, unless
// sigma lies strictly inside a leaf cell. That last case is what
// sites_in_cell adds on top.
TEST(ZPredecessor, ContractAgainstPointScan) {
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 300, 300).normalized();
        const LinearizedQuadtree L = linearize(build_compressed_quadtree(s), s);
        for (int q = 0; q < 1000; ++q) {
            GridCell sigma = random_cell(rng, 12);
            if (q % 2) {
                const auto& p = L.points[rng() % L.points.size()];
                sigma = p.ancestor(static_cast<int>(rng() % 30));
            }
            std::vector<int> expected;
            for (const Site& x : s) {
                if (in_cell(x.center(), sigma)) expected.push_back(x.id);
            }
            const auto span = sites_in_cell(L, sigma);
            ASSERT_EQ(sorted(std::vector<int>(span.begin(), span.end())), expected) << seed << " " << q;

            const auto pred = z_predecessor(L, sigma);
            bool inside_leaf = false;
            for (std::size_t i = 0; i < L.size(); ++i) {
                if (L.is_leaf(i) && L.cells[i].contains(sigma) && !(L.cells[i] == sigma)) inside_leaf = true;
            }
            if (inside_leaf) continue;
            if (!pred || !cells_related(L.cells[*pred], sigma)) {
                EXPECT_TRUE(expected.empty());
            } else {
                EXPECT_TRUE(sigma.contains(L.cells[*pred]));
                const auto tau = L.sites_of(*pred);
                EXPECT_EQ(sorted(std::vector<int>(tau.begin(), tau.end())), expected);
            }
        }
    }
}

TEST(Neighborhood, ExactAgainstCellScan) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t max_count = 0;
    for (int i = 0; i < 100000; ++i) {
        double r = std::pow(2.0, -1.0 - 12.0 * u(rng));
        Site s{0, 0.02 + 0.96 * u(rng), 0.02 + 0.96 * u(rng), r};
        if (i % 10 == 0) {
            // Power-of-two radius centered in its cell.
            const int level = 1 + static_cast<int>(rng() % 10);
            const double side = std::ldexp(1.0, -level);
            s.r = side;
            s.x = (std::floor(s.x / side) + 0.5) * side;
            s.y = (std::floor(s.y / side) + 0.5) * side;
        }
        const std::vector<GridCell> got = neighborhood(s);
        max_count = std::max(max_count, got.size());
        ASSERT_GE(got.size(), 1u);
        ASSERT_LE(got.size(), 25u);
        const int level = neighborhood_level(s.r);
        const double side = std::ldexp(1.0, -level);
        const auto cx = static_cast<std::int64_t>(std::floor(s.x / side));
        const auto cy = static_cast<std::int64_t>(std::floor(s.y / side));
        const std::int64_t limit = std::int64_t{1} << level;
        std::set<std::pair<std::uint64_t, std::uint64_t>> got_set;
        for (const GridCell& c : got) {
            EXPECT_EQ(c.level, level);
            got_set.emplace(c.ix, c.iy);
        }
        for (std::int64_t dx = -3; dx <= 3; ++dx) {
            for (std::int64_t dy = -3; dy <= 3; ++dy) {
                const std::int64_t ix = cx + dx, iy = cy + dy;
                if (ix < 0 || iy < 0 || ix >= limit || iy >= limit) continue;
                const double x0 = static_cast<double>(ix) * side, y0 = static_cast<double>(iy) * side;
                const double qx = std::clamp(s.x, x0, x0 + side) - s.x, qy = std::clamp(s.y, y0, y0 + side) - s.y;
                const double gap = qx * qx + qy * qy - s.r * s.r;
                if (std::abs(gap) < 1e-12 * s.r * s.r) continue;
                EXPECT_EQ(gap <= 0, got_set.count({static_cast<std::uint64_t>(ix), static_cast<std::uint64_t>(iy)}) == 1)
                    << i;
            }
        }
    }
    EXPECT_GE(max_count, 9u);
}

TEST(SolveR1, SingleSite) {
    const R1Outcome out = solve_R1(sites({{0.5, 0.5, 0.1}}));
    EXPECT_FALSE(out.is_crowded());
    ASSERT_EQ(out.edges.size(), 1u);
    EXPECT_TRUE(out.edges[0].empty());
}

TEST(SolveR1, SeventyThreeSitesInAUnitSquareAreCrowded) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Site> v;
    for (int i = 0; i < 73; ++i) v.push_back({0, u(rng), u(rng), 1.0 + u(rng)});
    for (int i = 0; i < 20; ++i) v.push_back({0, 50.0 + 10.0 * u(rng), 50.0 + 10.0 * u(rng), 0.1});
    const SiteSet s(std::move(v));
    const R1Outcome out = solve_R1(s);
    ASSERT_TRUE(out.is_crowded());
    EXPECT_TRUE(verify_crowded_square(s, *out.crowded));
    EXPECT_GT(out.crowded->members.size(), kCrowdLimit);
}

TEST(SolveR1, MatchesQuadraticFilter) {
    int crowded = 0, lists = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SiteSet s = testkit::r1_instance(seed, 256);
        std::vector<char> mask;
        if (seed % 3 == 0) {
            mask.assign(s.size(), 0);
            for (std::size_t i = 0; i < s.size(); i += 2) mask[i] = 1;
        }
        const R1Outcome fast = solve_R1(s, mask);
        const R1Outcome slow = brute_R1(s, mask);
        if (fast.is_crowded()) {
            ++crowded;
            EXPECT_TRUE(verify_crowded_square(s, *fast.crowded)) << seed;
            continue;
        }
        ++lists;
        ASSERT_FALSE(slow.is_crowded()) << seed;
        EXPECT_EQ(fast.edges, slow.edges) << seed;
        for (const auto& list : fast.edges) { EXPECT_LE(list.size(), kCrowdLimit); }
    }
    EXPECT_GT(crowded, 5);
    EXPECT_GT(lists, 50);
}

TEST(SolveR2, Examples) {
    const SiteSet s = sites({{0, 0, 1}, {0.5, 0, 0.1}, {5, 5, 3}});
    const std::vector<R2Query> q{{1, 0.5, 2.0}};
    const auto a = solve_R2(s, q);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->u, 0);
    EXPECT_EQ(a->query, 0u);
    const std::vector<R2Query> empty_range{{1, 1.5, 2.5}};
    EXPECT_FALSE(solve_R2(s, empty_range).has_value());
    EXPECT_FALSE(solve_R2(s, {}).has_value());
}

TEST(SolveR2, MatchesBruteFilter) {
    int answered = 0, empty = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 2, 256, testkit::Workload::Transmission);
        const std::vector<R2Query> q = testkit::r2_queries(s, seed);
        const auto fast = solve_R2(s, q);
        ASSERT_EQ(fast.has_value(), brute_R2(s, q).has_value()) << seed;
        if (!fast) {
            ++empty;
            continue;
        }
        ++answered;
        const R2Query& query = q[fast->query];
        const Site& u = s[static_cast<std::size_t>(fast->u)];
        EXPECT_NE(fast->u, query.s);
        EXPECT_GE(u.r, query.r1);
        EXPECT_LT(u.r, query.r2);
        EXPECT_TRUE(tx_edge(u, s[static_cast<std::size_t>(query.s)]));
    }
    EXPECT_GT(answered, 20);
    EXPECT_GT(empty, 20);
}

// A point lies in the union of a node's disks exactly when its lift falls
// under the upper envelope of the lifted disks, which the hull vertices
// attain.
TEST(UnionPolytopes, LiftingSoundness) {
    const SiteSet s = testkit::random_instance(21, 150, 150);
    const SiteSet nz = s.normalized();
    const RadiusTree t(s);
    const std::vector<Hull3> hulls = build_union_polytopes(t, nz);
    ASSERT_EQ(hulls.size(), t.nodes().size());
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inside = 0;
    for (int i = 0; i < 10000; ++i) {
        const int v = static_cast<int>(rng() % t.nodes().size());
        const auto iv = t.interval(v);
        Point p{u(rng), u(rng)};
        if (i % 2) {
            // Near one of the node's disks, so both answers are common.
            const Site& d = nz[static_cast<std::size_t>(iv[rng() % iv.size()])];
            p = {d.x + 3.0 * d.r * (u(rng) - 0.5), d.y + 3.0 * d.r * (u(rng) - 0.5)};
        }
        bool in_union = false;
        double margin = std::numeric_limits<double>::infinity();
        for (int id : iv) {
            const Site& d = nz[static_cast<std::size_t>(id)];
            const double g = (p.x - d.x) * (p.x - d.x) + (p.y - d.y) * (p.y - d.y) - d.r * d.r;
            in_union = in_union || g <= 0;
            margin = std::min(margin, std::abs(g));
        }
        if (margin < 1e-12) continue;
        std::vector<Vec3> dual;
        for (int id : iv) dual.push_back(lift_dual(nz[static_cast<std::size_t>(id)]));
        double best = -std::numeric_limits<double>::infinity();
        for (int k : hulls[static_cast<std::size_t>(v)].vertices) {
            best = std::max(best, dot(Vec3{p.x, p.y, 1.0}, dual[static_cast<std::size_t>(k)]));
        }
        const bool lifted = best >= p.x * p.x + p.y * p.y;
        EXPECT_EQ(lifted, in_union) << i;
        inside += in_union;
    }
    EXPECT_GT(inside, 500);
}

TEST(UnionPolytopes, SingleDiskAndSingleQuery) {
    const SiteSet s = sites({{0.5, 0.5, 0.1}});
    const RadiusTree t(s);
    const std::vector<Hull3> hulls = build_union_polytopes(t, s.normalized());
    ASSERT_EQ(hulls.size(), 1u);
    EXPECT_EQ(hulls[0].vertices, std::vector<int>{0});

    const SiteSet two = sites({{0.2, 0.2, 0.1}, {0.7, 0.7, 0.3}});
    const RadiusTree t2(two);
    const std::vector<R2Query> q{{0, 0.2, 1.0}};
    const std::vector<QueryHull> qh = build_query_hulls(t2, two.normalized(), q);
    std::size_t populated = 0;
    for (const QueryHull& h : qh) {
        if (h.sites.empty()) continue;
        ++populated;
        EXPECT_EQ(h.sites, std::vector<int>{0});
        EXPECT_EQ(h.hull.vertices, std::vector<int>{0});
    }
    EXPECT_EQ(populated, 1u);
}

TEST(StructuralBounds, NeighborhoodsNeverExceedTwentyFive) {
    reset_structural_stats();
    for (std::uint64_t seed = 0; seed < 30; ++seed) solve_R1(testkit::r1_instance(seed, 256));
    EXPECT_EQ(structural_stats().neighborhood_violations.load(), 0);
    EXPECT_LE(structural_stats().max_neighborhood_cells.load(), 25);
}

}  // namespace
}  // namespace geogirth

#include "geogirth/range_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geogirth/quadtree.hpp"

namespace geogirth {

namespace {

bool selected(std::span<const char> mask, std::size_t i) { return mask.empty() || mask[i] != 0; }

CrowdedSquare bounding_square(const SiteSet& sites, std::vector<int> members) {
    double lx = std::numeric_limits<double>::infinity(), ly = lx;
    double hx = -lx, hy = -lx;
    for (int m : members) {
        const Site& s = sites[static_cast<std::size_t>(m)];
        lx = std::min(lx, s.x);
        ly = std::min(ly, s.y);
        hx = std::max(hx, s.x);
        hy = std::max(hy, s.y);
    }
    std::sort(members.begin(), members.end());
    // Widen by ulps so that x0 + side really reaches the far members.
    double side = std::max(hx - lx, hy - ly);
    while (lx + side < hx || ly + side < hy) side = std::nextafter(side, std::numeric_limits<double>::infinity());
    return {lx, ly, side, std::move(members)};
}

// Sites of rank >= first_rank whose point cell lies in `cell`.
std::vector<int> sites_in_cell_from(const RadiusTree& tree, std::span<const GridCell> points,
                                    const GridCell& cell, std::size_t first_rank) {
    std::vector<int> out;
    for (std::size_t k = first_rank; k < tree.size(); ++k) {
        const int t = tree.order()[k];
        if (cell.contains(points[static_cast<std::size_t>(t)])) out.push_back(t);
    }
    return out;
}

struct SplitQuery {
    GridCell cell;
    int site = 0;
};

class R1Search {
public:
    R1Search(const SiteSet& sites, std::span<const char> mask)
        : sites_(sites), mask_(mask), norm_(sites.normalized()), tree_(sites) {}

    R1Outcome run() {
        const std::size_t n = sites_.size();
        R1Outcome out;
        out.edges.assign(n, {});
        if (n == 0) return out;

        points_.resize(n);
        for (std::size_t i = 0; i < n; ++i) points_[i] = point_cell(norm_[i].center());
        first_rank_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) first_rank_[i] = tree_.lower_index(sites_[i].r / 2.0);

        make_split_queries();
        distribute();

        std::vector<int> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return z_less(points_[a], points_[b]); });
        std::vector<GridCell> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = points_[static_cast<std::size_t>(ids[i])];
        const LinearizedQuadtree root = linearized_from_sorted(std::move(ids), std::move(pts));

        count_.assign(queries_.size(), 0);
        candidates_.assign(n, {});
        if (visit(tree_.root(), root)) {
            const SplitQuery& q = queries_[static_cast<std::size_t>(crowded_query_)];
            const auto s = static_cast<std::size_t>(q.site);
            out.crowded = bounding_square(sites_, sites_in_cell_from(tree_, points_, q.cell, first_rank_[s]));
            return out;
        }

        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int>& list = out.edges[s];
            for (int t : candidates_[s]) {
                if (t != static_cast<int>(s) && tx_edge(sites_[s], sites_[static_cast<std::size_t>(t)])) {
                    list.push_back(t);
                }
            }
            std::sort(list.begin(), list.end());
            if (list.size() > kCrowdLimit) {
                out.crowded = bounding_square(sites_, list);
                out.edges.assign(n, {});
                return out;
            }
        }
        return out;
    }

private:
    void make_split_queries() {
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            if (!selected(mask_, s)) continue;
            const Site& ns = norm_[s];
            // The exact neighborhood is checked against its constant bound;
            // the slightly grown cover absorbs rounding from normalization.
            (void)neighborhood(ns);
            for (const GridCell& c : neighborhood_cover(ns, ns.r * 1e-9 + 1e-14)) {
                queries_.push_back({c, static_cast<int>(s)});
            }
        }
        std::stable_sort(queries_.begin(), queries_.end(),
                         [](const SplitQuery& a, const SplitQuery& b) { return z_less(a.cell, b.cell); });
    }

    // Appends every split query, in Z-order, to the canonical nodes of the
    // rank ray [first_rank, n) of its site.
    void distribute() {
        const auto& nodes = tree_.nodes();
        lists_.assign(nodes.size(), {});
        active_.assign(nodes.size(), 0);
        std::vector<std::vector<int>> site_nodes(sites_.size());
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            if (selected(mask_, s)) site_nodes[s] = tree_.canonical_nodes(first_rank_[s], tree_.size());
        }
        for (std::size_t qi = 0; qi < queries_.size(); ++qi) {
            for (int v : site_nodes[static_cast<std::size_t>(queries_[qi].site)]) {
                lists_[static_cast<std::size_t>(v)].push_back(static_cast<int>(qi));
                active_[static_cast<std::size_t>(v)] = 1;
            }
        }
        // Nodes are numbered in preorder, so children follow their parent.
        for (std::size_t v = nodes.size(); v-- > 1;) {
            if (active_[v]) active_[static_cast<std::size_t>(nodes[v].parent)] = 1;
        }
    }

    // Returns true when a cell query exceeds the crowd limit.
    bool visit(int v, const LinearizedQuadtree& L) {
        const auto& list = lists_[static_cast<std::size_t>(v)];
        std::optional<std::size_t> pred;
        std::size_t next = 0;
        for (int qi : list) {
            const SplitQuery& q = queries_[static_cast<std::size_t>(qi)];
            while (next < L.size() && !z_less(q.cell, L.cells[next])) pred = next++;
            const std::span<const int> found = sites_in_cell(L, q.cell, pred);
            if (found.empty()) continue;
            count_[static_cast<std::size_t>(qi)] += found.size();
            if (count_[static_cast<std::size_t>(qi)] > kCrowdLimit) {
                crowded_query_ = qi;
                return true;
            }
            auto& cand = candidates_[static_cast<std::size_t>(q.site)];
            cand.insert(cand.end(), found.begin(), found.end());
        }

        const RadiusTreeNode& node = tree_.node(v);
        for (int child : {node.left, node.right}) {
            if (child < 0 || !active_[static_cast<std::size_t>(child)]) continue;
            const RadiusTreeNode& c = tree_.node(child);
            const LinearizedQuadtree sub = restrict_quadtree(L, [&](int site) {
                const int r = tree_.rank(site);
                return r >= c.lo && r < c.hi;
            });
            if (visit(child, sub)) return true;
        }
        return false;
    }

    const SiteSet& sites_;
    std::span<const char> mask_;
    SiteSet norm_;
    RadiusTree tree_;
    std::vector<GridCell> points_;
    std::vector<std::size_t> first_rank_;
    std::vector<SplitQuery> queries_;
    std::vector<std::vector<int>> lists_;
    std::vector<char> active_;
    std::vector<std::size_t> count_;
    std::vector<std::vector<int>> candidates_;
    int crowded_query_ = -1;
};

// Canonical nodes of the ranks selected by a query, with the querying site
// cut out of the range.
std::vector<int> query_nodes(const RadiusTree& tree, const R2Query& q) {
    std::vector<int> out;
    if (!(q.r1 < q.r2)) return out;
    const std::size_t i = tree.lower_index(q.r1);
    const std::size_t j = tree.lower_index(q.r2);
    if (i >= j) return out;
    const auto p = static_cast<std::size_t>(tree.rank(q.s));
    if (i < std::min(j, p)) out = tree.canonical_nodes(i, std::min(j, p));
    if (std::max(i, p + 1) < j) {
        const std::vector<int> right = tree.canonical_nodes(std::max(i, p + 1), j);
        out.insert(out.end(), right.begin(), right.end());
    }
    return out;
}

// Query indices per node, keeping only the first query of each site.
std::vector<std::vector<int>> queries_per_node(const RadiusTree& tree, std::span<const R2Query> queries) {
    std::vector<std::vector<int>> per_node(tree.nodes().size());
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        for (int v : query_nodes(tree, queries[qi])) per_node[static_cast<std::size_t>(v)].push_back(static_cast<int>(qi));
    }
    std::vector<int> seen(tree.size(), -1);
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        auto& list = per_node[v];
        std::erase_if(list, [&](int qi) {
            const auto s = static_cast<std::size_t>(queries[static_cast<std::size_t>(qi)].s);
            if (seen[s] == static_cast<int>(v)) return true;
            seen[s] = static_cast<int>(v);
            return false;
        });
    }
    return per_node;
}

Vec3 lift_query(const Site& s) { return {s.x, s.y, s.x * s.x + s.y * s.y}; }

// Order of the query sites for warm-started hill climbing: depth-first over
// the edges of their lifted hull, so consecutive queries are hull neighbors.
std::vector<std::size_t> query_order(const Hull3& qh, std::size_t k) {
    std::vector<std::size_t> order;
    order.reserve(k);
    std::vector<char> seen(k, 0);
    if (!qh.degenerate && !qh.vertices.empty()) {
        std::vector<char> pos_seen(qh.vertices.size(), 0);
        std::vector<std::size_t> stack{0};
        pos_seen[0] = 1;
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            const auto q = static_cast<std::size_t>(qh.vertices[p]);
            order.push_back(q);
            seen[q] = 1;
            for (int nb : qh.adjacency[p]) {
                if (!pos_seen[static_cast<std::size_t>(nb)]) {
                    pos_seen[static_cast<std::size_t>(nb)] = 1;
                    stack.push_back(static_cast<std::size_t>(nb));
                }
            }
        }
    }
    for (std::size_t q = 0; q < k; ++q) {
        if (!seen[q]) order.push_back(q);
    }
    return order;
}

constexpr double kLiftTolerance = 1e-12;

}  // namespace

R1Outcome solve_R1(const SiteSet& sites, std::span<const char> query_mask) {
    return R1Search(sites, query_mask).run();
}

R1Outcome brute_R1(const SiteSet& sites, std::span<const char> query_mask) {
    const std::size_t n = sites.size();
    R1Outcome out;
    out.edges.assign(n, {});
    for (std::size_t s = 0; s < n; ++s) {
        if (!selected(query_mask, s)) continue;
        for (std::size_t t = 0; t < n; ++t) {
            if (t != s && sites[t].r >= sites[s].r / 2.0 && tx_edge(sites[s], sites[t])) {
                out.edges[s].push_back(static_cast<int>(t));
            }
        }
        if (out.edges[s].size() > kCrowdLimit) {
            out.crowded = bounding_square(sites, out.edges[s]);
            out.edges.assign(n, {});
            return out;
        }
    }
    return out;
}

bool verify_crowded_square(const SiteSet& sites, const CrowdedSquare& sq) {
    std::vector<int> m = sq.members;
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) return false;
    if (m.size() <= kCrowdLimit || !(sq.side >= 0.0)) return false;
    for (int id : m) {
        if (id < 0 || static_cast<std::size_t>(id) >= sites.size()) return false;
        const Site& s = sites[static_cast<std::size_t>(id)];
        if (s.x < sq.x0 || s.x > sq.x0 + sq.side || s.y < sq.y0 || s.y > sq.y0 + sq.side) return false;
        if (s.r < sq.side / 4.0) return false;
    }
    return true;
}

Vec3 lift_dual(const Site& s) { return {2.0 * s.x, 2.0 * s.y, s.r * s.r - s.x * s.x - s.y * s.y}; }

std::optional<R2Answer> solve_R2(const SiteSet& sites, std::span<const R2Query> queries) {
    if (sites.empty() || queries.empty()) return std::nullopt;
    const SiteSet norm = sites.normalized();
    const RadiusTree tree(sites);
    const std::vector<std::vector<int>> per_node = queries_per_node(tree, queries);

    auto scan = [&](std::span<const int> members, int s) -> std::optional<int> {
        for (int u : members) {
            if (tx_edge(sites[static_cast<std::size_t>(u)], sites[static_cast<std::size_t>(s)])) return u;
        }
        return std::nullopt;
    };

    std::vector<Vec3> dual;
    std::vector<Vec3> lifted;
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        const auto& qs = per_node[v];
        if (qs.empty()) continue;
        const std::span<const int> members = tree.interval(static_cast<int>(v));
        const std::size_t m = members.size();
        const std::size_t k = qs.size();

        // A direct scan costs k*m predicate calls; the hull pays about m log m.
        if (m <= 16 || k <= 4 + static_cast<std::size_t>(std::log2(static_cast<double>(m)))) {
            for (int qi : qs) {
                if (auto u = scan(members, queries[static_cast<std::size_t>(qi)].s)) {
                    return R2Answer{*u, static_cast<std::size_t>(qi)};
                }
            }
            continue;
        }

        dual.resize(m);
        for (std::size_t i = 0; i < m; ++i) dual[i] = lift_dual(norm[static_cast<std::size_t>(members[i])]);
        const Hull3 hull = convex_hull_3d(dual);
        if (hull.degenerate) {
            for (int qi : qs) {
                if (auto u = scan(members, queries[static_cast<std::size_t>(qi)].s)) {
                    return R2Answer{*u, static_cast<std::size_t>(qi)};
                }
            }
            continue;
        }

        lifted.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            lifted[i] = lift_query(norm[static_cast<std::size_t>(queries[static_cast<std::size_t>(qs[i])].s)]);
        }
        std::size_t start = 0;
        for (std::size_t i : query_order(convex_hull_3d(lifted), k)) {
            const int qi = qs[i];
            const int s = queries[static_cast<std::size_t>(qi)].s;
            const Vec3 dir{lifted[i].x, lifted[i].y, 1.0};
            start = hill_climb(hull, dual, dir, start);
            const int top = hull.vertices[start];
            const double margin = dot(dir, dual[static_cast<std::size_t>(top)]) - lifted[i].z;
            if (margin < -kLiftTolerance) continue;
            const int u = members[static_cast<std::size_t>(top)];
            if (tx_edge(sites[static_cast<std::size_t>(u)], sites[static_cast<std::size_t>(s)])) {
                return R2Answer{u, static_cast<std::size_t>(qi)};
            }
            // Too close to the boundary to trust the lifted test.
            if (auto w = scan(members, s)) return R2Answer{*w, static_cast<std::size_t>(qi)};
        }
    }
    return std::nullopt;
}

std::optional<R2Answer> brute_R2(const SiteSet& sites, std::span<const R2Query> queries) {
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const R2Query& q = queries[qi];
        for (std::size_t u = 0; u < sites.size(); ++u) {
            if (static_cast<int>(u) == q.s) continue;
            if (sites[u].r >= q.r1 && sites[u].r < q.r2 && tx_edge(sites[u], sites[static_cast<std::size_t>(q.s)])) {
                return R2Answer{static_cast<int>(u), qi};
            }
        }
    }
    return std::nullopt;
}

std::vector<Hull3> build_union_polytopes(const RadiusTree& tree, const SiteSet& normalized) {
    std::vector<Hull3> out(tree.nodes().size());
    std::vector<Vec3> pts;
    for (std::size_t v = 0; v < out.size(); ++v) {
        const std::span<const int> members = tree.interval(static_cast<int>(v));
        pts.clear();
        for (int s : members) pts.push_back(lift_dual(normalized[static_cast<std::size_t>(s)]));
        out[v] = convex_hull_3d(pts);
    }
    return out;
}

std::vector<QueryHull> build_query_hulls(const RadiusTree& tree, const SiteSet& normalized,
                                         std::span<const R2Query> queries) {
    const std::vector<std::vector<int>> per_node = queries_per_node(tree, queries);
    std::vector<QueryHull> out(per_node.size());
    std::vector<Vec3> pts;
    for (std::size_t v = 0; v < out.size(); ++v) {
        if (per_node[v].empty()) continue;
        pts.clear();
        for (int qi : per_node[v]) {
            const int s = queries[static_cast<std::size_t>(qi)].s;
            out[v].sites.push_back(s);
            pts.push_back(lift_query(normalized[static_cast<std::size_t>(s)]));
        }
        out[v].hull = convex_hull_3d(pts);
    }
    return out;
}

}  // namespace geogirth

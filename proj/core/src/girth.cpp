#include "geogirth/girth.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "geogirth/disk_triangle.hpp"
#include "geogirth/sweep.hpp"

namespace geogirth {

namespace {

using HeapItem = std::pair<double, int>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

}  // namespace

ShortestPathTree shortest_path_tree(const UndirectedGraph& g, int root) {
    const std::size_t n = g.vertex_count();
    ShortestPathTree t;
    t.root = root;
    t.parent.assign(n, -1);
    t.dist.assign(n, std::numeric_limits<double>::infinity());
    t.branch.assign(n, -1);
    std::vector<char> done(n, 0);
    MinHeap pq;
    t.dist[root] = 0.0;
    t.branch[root] = root;
    pq.push({0.0, root});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const Neighbor& nb : g.neighbors(u)) {
            const double nd = d + nb.w;
            if (!done[nb.v] && nd < t.dist[nb.v]) {
                t.dist[nb.v] = nd;
                t.parent[nb.v] = u;
                t.branch[nb.v] = (u == root) ? nb.v : t.branch[u];
                pq.push({nd, nb.v});
            }
        }
    }
    return t;
}

CycleSearch::CycleSearch(const UndirectedGraph& g)
    : g_(g),
      dist_(g.vertex_count()),
      parent_(g.vertex_count()),
      branch_(g.vertex_count()),
      stamp_(g.vertex_count(), 0),
      settled_(g.vertex_count(), 0),
      retired_(g.vertex_count(), 0) {}

std::optional<Cycle> CycleSearch::through(int s, double limit) {
    if (retired_[static_cast<std::size_t>(s)]) return std::nullopt;
    ++round_;
    const double bound = std::isinf(limit) ? limit : 0.5 * limit * (1.0 + 1e-12);
    std::vector<int> order;
    MinHeap pq;
    auto touch = [&](int v) {
        if (stamp_[v] != round_) {
            stamp_[v] = round_;
            dist_[v] = std::numeric_limits<double>::infinity();
            parent_[v] = -1;
            branch_[v] = -1;
            settled_[v] = 0;
        }
    };
    touch(s);
    dist_[s] = 0.0;
    branch_[s] = s;
    pq.push({0.0, s});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (settled_[u] || d > dist_[u]) continue;
        if (d > bound) break;
        settled_[u] = 1;
        order.push_back(u);
        for (const Neighbor& nb : g_.neighbors(u)) {
            const int v = nb.v;
            if (retired_[v]) continue;
            touch(v);
            const double nd = d + nb.w;
            if (!settled_[v] && nd < dist_[v]) {
                dist_[v] = nd;
                parent_[v] = u;
                branch_[v] = (u == s) ? v : branch_[u];
                pq.push({nd, v});
            }
        }
    }

    double best = limit;
    int bu = -1, bv = -1;
    for (int u : order) {
        for (const Neighbor& nb : g_.neighbors(u)) {
            const int v = nb.v;
            if (v <= u || retired_[v] || stamp_[v] != round_ || !settled_[v]) continue;
            if (parent_[v] == u || parent_[u] == v) continue;
            if (branch_[u] == branch_[v]) continue;
            const double len = dist_[u] + nb.w + dist_[v];
            if (len < best) {
                best = len;
                bu = u;
                bv = v;
            }
        }
    }
    if (bu < 0) return std::nullopt;
    if (bv == s) std::swap(bu, bv);
    Cycle c;
    for (int x = bu; x != -1; x = parent_[x]) c.vertices.push_back(x);
    std::reverse(c.vertices.begin(), c.vertices.end());
    for (int x = bv; x != s; x = parent_[x]) c.vertices.push_back(x);
    c.length = best;
    return c;
}

std::optional<Cycle> shortest_cycle_through(const UndirectedGraph& g, int s, double limit) {
    CycleSearch cs(g);
    return cs.through(s, limit);
}

std::optional<int> planar_girth_unweighted(const UndirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr int kNone = std::numeric_limits<int>::max();
    int best = kNone;
    std::vector<int> depth(n, 0), parent(n, -1);
    std::vector<std::uint32_t> seen(n, 0);
    std::vector<char> retired(n, 0);
    std::vector<int> queue;
    queue.reserve(n);
    for (std::size_t root = 0; root < n && best > 3; ++root) {
        const auto stamp = static_cast<std::uint32_t>(root + 1);
        queue.clear();
        queue.push_back(static_cast<int>(root));
        seen[root] = stamp;
        depth[root] = 0;
        parent[root] = -1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            if (best != kNone && 2 * depth[u] + 1 >= best) break;
            for (const Neighbor& nb : g.neighbors(u)) {
                const int v = nb.v;
                if (retired[v]) continue;
                if (seen[v] != stamp) {
                    seen[v] = stamp;
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (parent[u] != v) {
                    best = std::min(best, depth[u] + depth[v] + 1);
                }
            }
        }
        retired[root] = 1;
    }
    if (best == kNone) return std::nullopt;
    return best;
}

std::optional<Cycle> planar_weighted_girth(const UndirectedGraph& g) {
    CycleSearch cs(g);
    std::optional<Cycle> best;
    for (int s = 0; s < static_cast<int>(g.vertex_count()); ++s) {
        const double limit = best ? best->length : std::numeric_limits<double>::infinity();
        if (auto c = cs.through(s, limit)) best = std::move(c);
        cs.retire(s);
    }
    return best;
}

std::optional<int> girth_unweighted(const SiteSet& sites) {
    if (const std::vector<int> order = sites.spatial_order(); !order.empty()) {
        return girth_unweighted(sites.subset(order));
    }
    SweepOutcome out = build_plane_or_witness(sites);
    if (!out.plane) return 3;
    if (planar_triangle(sites, out.graph)) return 3;
    return planar_girth_unweighted(out.graph);
}

std::optional<Cycle> weighted_girth_disk(const SiteSet& sites, std::uint64_t seed) {
    const std::size_t n = sites.size();
    if (n < 3) return std::nullopt;
    if (const std::vector<int> order = sites.spatial_order(); !order.empty()) {
        const auto c = weighted_girth_disk(sites.subset(order), seed);
        return c ? std::optional<Cycle>(remap(*c, order)) : std::nullopt;
    }
    const auto tri = shortest_triangle_disk(sites, seed);
    if (!tri) {
        SweepOutcome out = build_plane_or_witness(sites);
        if (!out.plane) throw std::logic_error("weighted_girth_disk: triangle-free graph reported as not plane");
        return planar_weighted_girth(out.graph);
    }

    Cycle best{{tri->v[0], tri->v[1], tri->v[2]}, tri->perimeter};
    const double W = tri->perimeter;
    const double ell = W / (3.0 * std::sqrt(2.0));
    std::vector<char> large(n, 0);
    std::vector<int> small_ids;
    std::vector<int> small_pos(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (sites[i].r >= ell / 4.0) {
            large[i] = 1;
        } else {
            small_pos[i] = static_cast<int>(small_ids.size());
            small_ids.push_back(static_cast<int>(i));
        }
    }

    // Cycles avoiding large sites: the small sites induce a plane graph.
    const SiteSet small_sites = sites.subset(small_ids);
    SweepOutcome small_out = build_plane_or_witness(small_sites);
    if (!small_out.plane) throw std::logic_error("weighted_girth_disk: small-site graph is not plane");
    const UndirectedGraph& small_graph = small_out.graph;
    {
        CycleSearch cs(small_graph);
        for (int s = 0; s < static_cast<int>(small_ids.size()); ++s) {
            if (auto c = cs.through(s, best.length)) best = remap(*c, small_ids);
            cs.retire(s);
        }
    }

    // Cycles through a large site stay within W/2 of it, hence inside the
    // 7x7 block of cells around its cell.
    const GridIndex grid(sites, ell);
    std::vector<int> local(n, -1);
    for (const CellKey& key : grid.cells()) {
        std::vector<int> own_large;
        for (int m : grid.cell(key)) {
            if (large[static_cast<std::size_t>(m)]) own_large.push_back(m);
        }
        if (own_large.empty()) continue;

        const std::vector<int> block = grid.block(key, 3);
        for (std::size_t i = 0; i < block.size(); ++i) local[block[i]] = static_cast<int>(i);
        std::vector<Edge> edges;
        for (int a : block) {
            if (large[static_cast<std::size_t>(a)]) {
                for (int b : block) {
                    if (b == a || (large[static_cast<std::size_t>(b)] && b < a)) continue;
                    if (disk_edge(sites[a], sites[b])) edges.push_back({local[a], local[b]});
                }
            } else {
                for (const Neighbor& nb : small_graph.neighbors(small_pos[a])) {
                    const int b = small_ids[static_cast<std::size_t>(nb.v)];
                    if (a < b && local[b] >= 0) edges.push_back({local[a], local[b]});
                }
            }
        }
        const SiteSet block_sites = sites.subset(block);
        const UndirectedGraph g = UndirectedGraph::from_edges(block_sites, edges);
        CycleSearch cs(g);
        for (int s : own_large) {
            if (auto c = cs.through(local[s], best.length)) best = remap(*c, block);
        }
        for (int b : block) local[b] = -1;
    }
    return best;
}

}  // namespace geogirth

#include "geogirth/graph.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <queue>

namespace geogirth {

UndirectedGraph UndirectedGraph::from_edges(const SiteSet& sites, std::span<const Edge> edges) {
    UndirectedGraph g(sites.size());
    std::vector<Edge> norm;
    norm.reserve(edges.size());
    for (Edge e : edges) {
        if (e.u == e.v) continue;
        if (e.u > e.v) std::swap(e.u, e.v);
        norm.push_back(e);
    }
    std::sort(norm.begin(), norm.end(), [](Edge a, Edge b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    norm.erase(std::unique(norm.begin(), norm.end(), [](Edge a, Edge b) { return a.u == b.u && a.v == b.v; }),
               norm.end());
    for (Edge e : norm) {
        const double w = dist(sites[e.u], sites[e.v]);
        g.adj_[e.u].push_back({e.v, w});
        g.adj_[e.v].push_back({e.u, w});
    }
    g.edges_ = norm.size();
    return g;
}

bool UndirectedGraph::has_edge(int u, int v) const {
    for (const Neighbor& nb : neighbors(u)) {
        if (nb.v == v) return true;
    }
    return false;
}

std::vector<Edge> UndirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        for (const Neighbor& nb : adj_[u]) {
            if (static_cast<int>(u) < nb.v) out.push_back({static_cast<int>(u), nb.v});
        }
    }
    return out;
}

void UndirectedGraph::dump(std::ostream& out) const {
    const auto old = out.precision(17);
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        for (const Neighbor& nb : adj_[u]) {
            if (static_cast<int>(u) < nb.v) out << u << ' ' << nb.v << ' ' << nb.w << '\n';
        }
    }
    out.precision(old);
}

bool DirectedGraph::has_arc(int u, int v) const {
    for (const Neighbor& nb : out(u)) {
        if (nb.v == v) return true;
    }
    return false;
}

void DirectedGraph::add_arc(int u, int v, double w) {
    out_[static_cast<std::size_t>(u)].push_back({v, w});
    ++arcs_;
}

std::array<int, 3> Triangle::sorted_ids() const {
    std::array<int, 3> s = v;
    std::sort(s.begin(), s.end());
    return s;
}

bool triangle_less(const Triangle& a, const Triangle& b) {
    if (a.perimeter != b.perimeter) return a.perimeter < b.perimeter;
    return a.sorted_ids() < b.sorted_ids();
}

Triangle make_triangle(const SiteSet& sites, int a, int b, int c) {
    return {{a, b, c}, perimeter(sites[a], sites[b], sites[c])};
}

double cycle_length(const SiteSet& sites, std::span<const int> vertices) {
    double len = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        len += dist(sites[vertices[i]], sites[vertices[(i + 1) % vertices.size()]]);
    }
    return len;
}

Triangle remap(const Triangle& t, std::span<const int> to_parent) {
    Triangle out = t;
    for (int& v : out.v) v = to_parent[static_cast<std::size_t>(v)];
    return out;
}

Cycle remap(const Cycle& c, std::span<const int> to_parent) {
    Cycle out = c;
    for (int& v : out.vertices) v = to_parent[static_cast<std::size_t>(v)];
    return out;
}

UndirectedGraph build_disk_graph_brute(const SiteSet& sites) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            if (disk_edge(sites[i], sites[j])) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    }
    return UndirectedGraph::from_edges(sites, edges);
}

DirectedGraph build_tx_graph_brute(const SiteSet& sites) {
    DirectedGraph g(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = 0; j < sites.size(); ++j) {
            if (i != j && tx_edge(sites[i], sites[j])) {
                g.add_arc(static_cast<int>(i), static_cast<int>(j), dist(sites[i], sites[j]));
            }
        }
    }
    return g;
}

namespace {

std::vector<std::vector<char>> adjacency_matrix(const UndirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
        for (const Neighbor& nb : g.neighbors(static_cast<int>(u))) m[u][nb.v] = 1;
    }
    return m;
}

std::vector<std::vector<char>> adjacency_matrix(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
        for (const Neighbor& nb : g.out(static_cast<int>(u))) m[u][nb.v] = 1;
    }
    return m;
}

// Scans i < j < k in lexicographic order; `visit` returns true to stop.
template <typename Visit>
void scan_undirected(const std::vector<std::vector<char>>& m, Visit&& visit) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!m[i][j]) continue;
            for (int k = j + 1; k < n; ++k) {
                if (m[i][k] && m[j][k] && visit(i, j, k)) return;
            }
        }
    }
}

// Directed 3-cycles with the smallest id first; both orientations tried.
template <typename Visit>
void scan_directed(const std::vector<std::vector<char>>& m, Visit&& visit) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                if (m[i][j] && m[j][k] && m[k][i] && visit(i, j, k)) return;
                if (m[i][k] && m[k][j] && m[j][i] && visit(i, k, j)) return;
            }
        }
    }
}

}  // namespace

std::optional<Triangle> brute_triangle(const SiteSet& sites, const UndirectedGraph& g) {
    std::optional<Triangle> found;
    scan_undirected(adjacency_matrix(g), [&](int i, int j, int k) {
        found = make_triangle(sites, i, j, k);
        return true;
    });
    return found;
}

std::optional<Triangle> brute_triangle(const SiteSet& sites, const DirectedGraph& g) {
    std::optional<Triangle> found;
    scan_directed(adjacency_matrix(g), [&](int i, int j, int k) {
        found = make_triangle(sites, i, j, k);
        return true;
    });
    return found;
}

std::optional<Triangle> brute_shortest_triangle(const SiteSet& sites, const UndirectedGraph& g) {
    std::optional<Triangle> best;
    scan_undirected(adjacency_matrix(g), [&](int i, int j, int k) {
        const Triangle t = make_triangle(sites, i, j, k);
        if (!best || triangle_less(t, *best)) best = t;
        return false;
    });
    return best;
}

std::optional<Triangle> brute_shortest_triangle(const SiteSet& sites, const DirectedGraph& g) {
    std::optional<Triangle> best;
    scan_directed(adjacency_matrix(g), [&](int i, int j, int k) {
        const Triangle t = make_triangle(sites, i, j, k);
        if (!best || triangle_less(t, *best)) best = t;
        return false;
    });
    return best;
}

std::optional<int> brute_girth_unweighted(const UndirectedGraph& g) {
    const int n = static_cast<int>(g.vertex_count());
    int best = std::numeric_limits<int>::max();
    std::vector<int> depth(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int root = 0; root < n; ++root) {
        std::fill(depth.begin(), depth.end(), -1);
        std::queue<int> q;
        depth[root] = 0;
        parent[root] = -1;
        q.push(root);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const Neighbor& nb : g.neighbors(u)) {
                if (depth[nb.v] < 0) {
                    depth[nb.v] = depth[u] + 1;
                    parent[nb.v] = u;
                    q.push(nb.v);
                } else if (parent[u] != nb.v) {
                    best = std::min(best, depth[u] + depth[nb.v] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

namespace {

// Dijkstra from `src` ignoring the single edge {skip_u, skip_v}; returns the
// path to `dst` (src first) or empty if unreachable.
std::pair<double, std::vector<int>> dijkstra_without_edge(const UndirectedGraph& g, int src, int dst, int skip_u,
                                                          int skip_v) {
    const std::size_t n = g.vertex_count();
    std::vector<double> d(n, std::numeric_limits<double>::infinity());
    std::vector<int> par(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        if (u == dst) break;
        for (const Neighbor& nb : g.neighbors(u)) {
            if ((u == skip_u && nb.v == skip_v) || (u == skip_v && nb.v == skip_u)) continue;
            const double nd = du + nb.w;
            if (nd < d[nb.v]) {
                d[nb.v] = nd;
                par[nb.v] = u;
                pq.push({nd, nb.v});
            }
        }
    }
    if (!(d[dst] < std::numeric_limits<double>::infinity())) return {d[dst], {}};
    std::vector<int> path;
    for (int v = dst; v != -1; v = par[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return {d[dst], path};
}

void consider_edge(const UndirectedGraph& g, int u, const Neighbor& nb, std::optional<Cycle>& best) {
    auto [d, path] = dijkstra_without_edge(g, u, nb.v, u, nb.v);
    if (path.empty()) return;
    const double len = d + nb.w;
    if (!best || len < best->length) best = Cycle{std::move(path), len};
}

}  // namespace

std::optional<Cycle> brute_min_weight_cycle(const UndirectedGraph& g) {
    std::optional<Cycle> best;
    for (int u = 0; u < static_cast<int>(g.vertex_count()); ++u) {
        for (const Neighbor& nb : g.neighbors(u)) {
            if (u < nb.v) consider_edge(g, u, nb, best);
        }
    }
    return best;
}

std::optional<Cycle> brute_min_weight_cycle_through(const UndirectedGraph& g, int s) {
    std::optional<Cycle> best;
    for (const Neighbor& nb : g.neighbors(s)) consider_edge(g, s, nb, best);
    return best;
}

}  // namespace geogirth

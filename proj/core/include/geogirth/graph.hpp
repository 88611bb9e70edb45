#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geogirth/geometry.hpp"

namespace geogirth {

struct Neighbor {
    int v = 0;
    double w = 0.0;
};

struct Edge {
    int u = 0;
    int v = 0;
};

/// Symmetric adjacency lists with Euclidean edge weights.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::size_t n) : adj_(n) {}

    /// Builds from an edge list; duplicates and self-loops are dropped.
    static UndirectedGraph from_edges(const SiteSet& sites, std::span<const Edge> edges);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }
    std::span<const Neighbor> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    bool has_edge(int u, int v) const;
    std::vector<Edge> edges() const;

    /// One `u v w` line per edge with u < v.
    void dump(std::ostream& out) const;

private:
    std::vector<std::vector<Neighbor>> adj_;
    std::size_t edges_ = 0;
};

class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n) : out_(n) {}

    std::size_t vertex_count() const { return out_.size(); }
    std::size_t arc_count() const { return arcs_; }
    std::span<const Neighbor> out(int v) const { return out_[static_cast<std::size_t>(v)]; }
    bool has_arc(int u, int v) const;
    void add_arc(int u, int v, double w);

private:
    std::vector<std::vector<Neighbor>> out_;
    std::size_t arcs_ = 0;
};

/// Three site ids. For transmission graphs the order is the cycle
/// direction: v[0] -> v[1] -> v[2] -> v[0].
struct Triangle {
    std::array<int, 3> v{};
    double perimeter = 0.0;

    std::array<int, 3> sorted_ids() const;
};

/// Closed vertex sequence; `length` is the Euclidean weight sum.
struct Cycle {
    std::vector<int> vertices;
    double length = 0.0;

    std::size_t hops() const { return vertices.size(); }
};

/// Perimeter-sorted comparison under the tie rule (value, then smaller ids).
bool triangle_less(const Triangle& a, const Triangle& b);

Triangle make_triangle(const SiteSet& sites, int a, int b, int c);
double cycle_length(const SiteSet& sites, std::span<const int> vertices);

/// Maps a triangle found on a subset back to parent ids.
Triangle remap(const Triangle& t, std::span<const int> to_parent);
Cycle remap(const Cycle& c, std::span<const int> to_parent);

// Brute-force oracles. Every one of these is quadratic or worse and is meant
// for verification at small n.

UndirectedGraph build_disk_graph_brute(const SiteSet& sites);
DirectedGraph build_tx_graph_brute(const SiteSet& sites);

std::optional<Triangle> brute_triangle(const SiteSet& sites, const UndirectedGraph& g);
std::optional<Triangle> brute_triangle(const SiteSet& sites, const DirectedGraph& g);
std::optional<Triangle> brute_shortest_triangle(const SiteSet& sites, const UndirectedGraph& g);
std::optional<Triangle> brute_shortest_triangle(const SiteSet& sites, const DirectedGraph& g);

/// BFS from every vertex; exact hop girth, or nullopt for forests.
std::optional<int> brute_girth_unweighted(const UndirectedGraph& g);

/// For every edge uv: remove it, run Dijkstra u -> v, close with uv.
std::optional<Cycle> brute_min_weight_cycle(const UndirectedGraph& g);

/// Same edge-removal method restricted to edges incident to `s`.
std::optional<Cycle> brute_min_weight_cycle_through(const UndirectedGraph& g, int s);

/// Default vertex cap for the oracles above.
inline constexpr std::size_t kDefaultOracleCap = 512;

}  // namespace geogirth

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "geogirth/geometry.hpp"
#include "geogirth/graph.hpp"

namespace geogirth {

/// Dijkstra tree rooted at `root`. `branch[v]` is the child of the root on
/// the tree path to v (the root maps to itself); unreached vertices have
/// parent -1 and infinite distance.
struct ShortestPathTree {
    int root = 0;
    std::vector<int> parent;
    std::vector<double> dist;
    std::vector<int> branch;
};

ShortestPathTree shortest_path_tree(const UndirectedGraph& g, int root);

/// Reusable workspace for repeated cycle searches on one graph. Vertices
/// can be retired so that later searches ignore them.
class CycleSearch {
public:
    explicit CycleSearch(const UndirectedGraph& g);

    /// Shortest cycle through s among cycles shorter than `limit`, using the
    /// tree-paths-plus-one-edge structure: every non-tree edge uv whose
    /// endpoints hang below different children of s closes a candidate.
    /// Only vertices within limit/2 of s are settled.
    std::optional<Cycle> through(int s, double limit = std::numeric_limits<double>::infinity());

    void retire(int v) { retired_[static_cast<std::size_t>(v)] = 1; }

private:
    const UndirectedGraph& g_;
    std::vector<double> dist_;
    std::vector<int> parent_;
    std::vector<int> branch_;
    std::vector<std::uint32_t> stamp_;
    std::vector<char> settled_;
    std::vector<char> retired_;
    std::uint32_t round_ = 0;
};

/// Minimum-weight cycle through s, or nullopt when s lies on no cycle.
std::optional<Cycle> shortest_cycle_through(const UndirectedGraph& g, int s,
                                            double limit = std::numeric_limits<double>::infinity());

/// Hop girth by breadth-first search from every vertex, pruned at half the
/// best cycle found so far. Intended for plane graphs.
std::optional<int> planar_girth_unweighted(const UndirectedGraph& g);

/// Minimum-weight cycle: the shortest cycle through each vertex in turn,
/// retiring processed vertices and bounding each search by the best
/// length so far.
std::optional<Cycle> planar_weighted_girth(const UndirectedGraph& g);

std::optional<int> girth_unweighted(const SiteSet& sites);

/// Weighted girth of the disk graph with Euclidean edge lengths.
std::optional<Cycle> weighted_girth_disk(const SiteSet& sites, std::uint64_t seed = 0);

}  // namespace geogirth

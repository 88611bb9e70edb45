#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geogirth/geometry.hpp"

namespace geogirth {

struct RadiusTreeNode {
    int lo = 0;  // half-open rank range [lo, hi) into RadiusTree::order()
    int hi = 0;
    int left = -1;
    int right = -1;
    int parent = -1;
};

/// Balanced binary tree over the sites sorted by (radius, id). Every node
/// owns the contiguous block of ranks below it, so its canonical interval is
/// a span of `order()` that is already sorted by radius.
class RadiusTree {
public:
    explicit RadiusTree(const SiteSet& sites);

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }
    int root() const { return nodes_.empty() ? -1 : 0; }
    const std::vector<RadiusTreeNode>& nodes() const { return nodes_; }
    const RadiusTreeNode& node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }

    /// Site ids by increasing (radius, id).
    const std::vector<int>& order() const { return order_; }
    /// Rank of a site id in `order()`.
    int rank(int site) const { return rank_[static_cast<std::size_t>(site)]; }
    double radius_at(std::size_t rank) const { return radii_[rank]; }

    /// The canonical interval of node v.
    std::span<const int> interval(int v) const;

    /// First rank whose radius is >= r.
    std::size_t lower_index(double r) const;

    /// Nodes whose intervals partition the ranks [i, j), left to right.
    std::vector<int> canonical_nodes(std::size_t i, std::size_t j) const;
    /// Partition of {s : r1 <= r_s < r2}.
    std::vector<int> canonical_nodes_radius(double r1, double r2) const;
    /// Partition of {s : r_s >= r}.
    std::vector<int> canonical_nodes_ray(double r) const;

private:
    int build(int lo, int hi, int parent);
    void collect(int v, std::size_t i, std::size_t j, std::vector<int>& out) const;

    std::vector<int> order_;
    std::vector<int> rank_;
    std::vector<double> radii_;
    std::vector<RadiusTreeNode> nodes_;
};

}  // namespace geogirth

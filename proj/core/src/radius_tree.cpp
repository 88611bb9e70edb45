#include "geogirth/radius_tree.hpp"

#include <algorithm>

namespace geogirth {

RadiusTree::RadiusTree(const SiteSet& sites) : order_(sites.order_by_radius()) {
    const std::size_t n = order_.size();
    rank_.assign(n, 0);
    radii_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        rank_[static_cast<std::size_t>(order_[k])] = static_cast<int>(k);
        radii_[k] = sites[static_cast<std::size_t>(order_[k])].r;
    }
    if (n > 0) {
        nodes_.reserve(2 * n);
        build(0, static_cast<int>(n), -1);
    }
}

int RadiusTree::build(int lo, int hi, int parent) {
    const int v = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi, -1, -1, parent});
    if (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const int l = build(lo, mid, v);
        const int r = build(mid, hi, v);
        nodes_[static_cast<std::size_t>(v)].left = l;
        nodes_[static_cast<std::size_t>(v)].right = r;
    }
    return v;
}

std::span<const int> RadiusTree::interval(int v) const {
    const RadiusTreeNode& nd = node(v);
    return std::span<const int>(order_).subspan(static_cast<std::size_t>(nd.lo),
                                                static_cast<std::size_t>(nd.hi - nd.lo));
}

std::size_t RadiusTree::lower_index(double r) const {
    return static_cast<std::size_t>(std::lower_bound(radii_.begin(), radii_.end(), r) - radii_.begin());
}

void RadiusTree::collect(int v, std::size_t i, std::size_t j, std::vector<int>& out) const {
    const RadiusTreeNode& nd = node(v);
    const auto lo = static_cast<std::size_t>(nd.lo), hi = static_cast<std::size_t>(nd.hi);
    if (hi <= i || j <= lo) return;
    if (i <= lo && hi <= j) {
        out.push_back(v);
        return;
    }
    collect(nd.left, i, j, out);
    collect(nd.right, i, j, out);
}

std::vector<int> RadiusTree::canonical_nodes(std::size_t i, std::size_t j) const {
    std::vector<int> out;
    if (!nodes_.empty() && i < j) collect(0, i, std::min(j, size()), out);
    return out;
}

std::vector<int> RadiusTree::canonical_nodes_radius(double r1, double r2) const {
    return canonical_nodes(lower_index(r1), lower_index(r2));
}

std::vector<int> RadiusTree::canonical_nodes_ray(double r) const { return canonical_nodes(lower_index(r), size()); }

}  // namespace geogirth

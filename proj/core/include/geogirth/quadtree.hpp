#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "geogirth/geometry.hpp"
#include "geogirth/radius_tree.hpp"

namespace geogirth {

/// Deepest grid level. Points are located by their level-62 cell, which is
/// finer than the double spacing of any coordinate in [1/128, 1).
constexpr int kMaxLevel = 62;

/// Cell of the hierarchical grid over the unit square: level i has side
/// 2^-i and covers [ix 2^-i, (ix+1) 2^-i] x [iy 2^-i, (iy+1) 2^-i], with y
/// growing upward.
struct GridCell {
    int level = 0;
    std::uint64_t ix = 0;
    std::uint64_t iy = 0;

    bool operator==(const GridCell&) const = default;

    /// Ancestor at a coarser (or equal) level.
    GridCell ancestor(int at_level) const;
    /// True if `other` lies inside this cell (or equals it).
    bool contains(const GridCell& other) const;
    double side() const;
    double x0() const;
    double y0() const;
};

/// Position among the four children of the parent in Z-order:
/// 0 = NW, 1 = NE, 2 = SW, 3 = SE.
int child_slot(std::uint64_t x_bit, std::uint64_t y_bit);

/// Three-way Z-order comparison (<0, 0, >0). A cell precedes every cell that
/// contains it; unrelated cells compare by the children of their lowest
/// common ancestor.
int z_compare(const GridCell& a, const GridCell& b);
inline bool z_less(const GridCell& a, const GridCell& b) { return z_compare(a, b) < 0; }

/// Nested or equal (grid cells either nest or have disjoint interiors).
inline bool cells_related(const GridCell& a, const GridCell& b) { return a.contains(b) || b.contains(a); }

/// Smallest cell containing both.
GridCell lowest_common_ancestor(const GridCell& a, const GridCell& b);

/// Level-62 cell of a point of [0, 1)^2. Throws GeometryError outside.
GridCell point_cell(Point p);

/// Compressed quadtree with explicit children, each list in Z-order. A node
/// is flagged compressed when a chain of one-child cells between it and its
/// parent was contracted away.
struct CompressedQuadtree {
    struct Node {
        GridCell cell;
        int parent = -1;
        std::vector<int> children;
        int site = -1;  // owning site for leaves
        bool compressed = false;
    };
    std::vector<Node> nodes;
    int root = -1;
};

/// Cells of a compressed quadtree in increasing Z-order (postorder), each
/// with the contiguous range of its sites in `sites`.
struct LinearizedQuadtree {
    std::vector<GridCell> cells;
    std::vector<int> first;  // [first, last) into `sites`
    std::vector<int> last;
    std::vector<int> parent;
    std::vector<char> compressed;
    std::vector<int> sites;         // site ids in Z-order of their points
    std::vector<GridCell> points;   // level-62 cells of `sites`

    std::size_t size() const { return cells.size(); }
    bool is_leaf(std::size_t i) const { return last[i] - first[i] == 1; }
    std::span<const int> sites_of(std::size_t i) const {
        return std::span<const int>(sites).subspan(static_cast<std::size_t>(first[i]),
                                                   static_cast<std::size_t>(last[i] - first[i]));
    }
};

/// Indices of `cells` sorted by Z-order.
std::vector<int> z_sort(std::span<const GridCell> cells);

/// Builds the linearized quadtree from points already in Z-order in one
/// stack pass. Throws GeometryError if two points share a level-62 cell.
LinearizedQuadtree linearized_from_sorted(std::vector<int> site_ids, std::vector<GridCell> points);

/// Compressed quadtree of the listed sites of a normalized site set.
CompressedQuadtree build_compressed_quadtree(const SiteSet& normalized, std::span<const int> ids);
CompressedQuadtree build_compressed_quadtree(const SiteSet& normalized);

/// Postorder listing with children visited in Z-order.
LinearizedQuadtree linearize(const CompressedQuadtree& tree, const SiteSet& normalized);

/// Quadtree of the sites of `parent` accepted by `keep`: the Z-ordered site
/// list is filtered and the tree recompressed, in time linear in `parent`.
LinearizedQuadtree restrict_quadtree(const LinearizedQuadtree& parent, const std::function<bool(int)>& keep);

/// The linearized quadtree of every canonical interval of the radius tree,
/// indexed by tree node. Uses O(n log n) memory; meant for inspection.
std::vector<LinearizedQuadtree> descend_quadtrees(const RadiusTree& tree, const SiteSet& normalized);

/// Index of max_Z {rho in L : rho <=_Z sigma}, or nullopt.
std::optional<std::size_t> z_predecessor(const LinearizedQuadtree& L, const GridCell& sigma);

/// Sites of L inside sigma. The predecessor answers whenever it meets sigma.
/// Otherwise sigma can still hold a site when it lies strictly inside a
/// leaf cell; that leaf is the Z-successor, and its one point is tested.
std::span<const int> sites_in_cell(const LinearizedQuadtree& L, const GridCell& sigma);
/// Same, given the predecessor index already found by a merge.
std::span<const int> sites_in_cell(const LinearizedQuadtree& L, const GridCell& sigma,
                                   std::optional<std::size_t> pred);

/// Grid level whose cell side is 2^floor(log2 r), clamped to [0, 62].
int neighborhood_level(double r);

/// All cells of side 2^floor(log2 r) meeting the closed disk of a normalized
/// site, decided exactly. At most 25 (checked; counted in diagnostics).
std::vector<GridCell> neighborhood(const Site& normalized_site);

/// Cells of the same level meeting the disk grown by `slack` (absolute), a
/// superset of neighborhood() used to absorb normalization rounding.
std::vector<GridCell> neighborhood_cover(const Site& normalized_site, double slack);

}  // namespace geogirth

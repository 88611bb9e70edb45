#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "geogirth/chan.hpp"
#include "geogirth/geometry.hpp"
#include "geogirth/graph.hpp"

namespace geogirth {

/// Integer key of a square grid cell.
struct CellKey {
    std::int64_t x = 0;
    std::int64_t y = 0;
    bool operator==(const CellKey&) const = default;
    auto operator<=>(const CellKey&) const = default;
};

/// Sites bucketed into square cells of side `side` whose lattice is shifted
/// by `origin`. Cells are half-open: [k*side, (k+1)*side). Occupied cells are
/// kept sorted by (x, y), so the cells of one column of a block are stored
/// contiguously and a block lookup costs one binary search per column.
class GridIndex {
public:
    GridIndex(const SiteSet& sites, double side, Point origin = {});
    /// Indexes only the listed site ids.
    GridIndex(const SiteSet& sites, std::span<const int> ids, double side, Point origin = {});

    double side() const { return side_; }
    CellKey key_of(Point p) const;
    /// Site ids in the cell (empty span for unoccupied cells).
    std::span<const int> cell(CellKey k) const;
    /// Occupied cells in (x, y) order.
    const std::vector<CellKey>& cells() const { return keys_; }
    /// Site ids in the (2*reach+1)^2 block of cells centered at `k`.
    std::vector<int> block(CellKey k, int reach) const;
    /// Appends the ids of the block to `out` without clearing it.
    void append_block(CellKey k, int reach, std::vector<int>& out) const;

private:
    void build(const SiteSet& sites, std::vector<int> ids);
    /// Member range of cells with key in [(x, y0), (x, y1)].
    std::span<const int> column(std::int64_t x, std::int64_t y0, std::int64_t y1) const;

    double side_;
    Point origin_;
    std::vector<CellKey> keys_;
    std::vector<int> starts_;  // keys_.size() + 1 offsets into members_
    std::vector<int> members_;
    std::unordered_map<std::int64_t, std::pair<int, int>> columns_;  // x -> range in keys_
};

/// The four grids of side W/(3*sqrt(2)) shifted by half a cell in x, y and
/// both. Any axis-parallel square of side at most half a cell fits inside a
/// single cell of one of them.
struct ShiftedGrids {
    double ell = 0.0;
    std::array<Point, 4> origins{};

    static ShiftedGrids for_perimeter(double W);
    /// Index of a grid containing the axis-parallel box of the points in one
    /// cell, or -1.
    int covering_grid(std::span<const Point> pts) const;
};

/// Triangle search on a graph with few edges per vertex. Orients each edge
/// along a smallest-degree-first elimination order and intersects
/// out-neighborhoods; linear time on plane graphs.
std::optional<Triangle> planar_triangle(const SiteSet& sites, const UndirectedGraph& g);

/// Some triangle of the disk graph, or nullopt if it is triangle-free.
std::optional<Triangle> find_triangle_disk(const SiteSet& sites);

/// Whether the disk graph has a triangle of perimeter at most W.
bool decide_perimeter(const SiteSet& sites, double W);

/// As decide_perimeter, returning a witness triangle of perimeter at most W.
std::optional<Triangle> decide_perimeter_witness(const SiteSet& sites, double W);

/// Minimum-perimeter triangle of the disk graph. The random seed changes the
/// running time only.
std::optional<Triangle> shortest_triangle_disk(const SiteSet& sites, std::uint64_t seed = 0,
                                               ChanStats* stats = nullptr);

}  // namespace geogirth

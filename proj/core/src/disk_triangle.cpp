#include "geogirth/disk_triangle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geogirth/diagnostics.hpp"
#include "geogirth/sweep.hpp"

namespace geogirth {

namespace {

std::int64_t cell_coord(double v) {
    const double f = std::floor(v);
    if (!(std::abs(f) < 4.0e18)) throw GeometryError("grid cell index out of range; the scale is too small");
    return static_cast<std::int64_t>(f);
}

}  // namespace

GridIndex::GridIndex(const SiteSet& sites, double side, Point origin) : side_(side), origin_(origin) {
    std::vector<int> ids(sites.size());
    std::iota(ids.begin(), ids.end(), 0);
    build(sites, std::move(ids));
}

GridIndex::GridIndex(const SiteSet& sites, std::span<const int> ids, double side, Point origin)
    : side_(side), origin_(origin) {
    build(sites, std::vector<int>(ids.begin(), ids.end()));
}

void GridIndex::build(const SiteSet& sites, std::vector<int> ids) {
    if (!(side_ > 0.0) || !std::isfinite(side_)) throw std::invalid_argument("GridIndex: side must be positive");
    std::vector<std::pair<CellKey, int>> keyed;
    keyed.reserve(ids.size());
    for (int id : ids) keyed.emplace_back(key_of(sites[id].center()), id);
    std::sort(keyed.begin(), keyed.end());
    members_.reserve(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) {
            keys_.push_back(keyed[i].first);
            starts_.push_back(static_cast<int>(i));
        }
        members_.push_back(keyed[i].second);
    }
    starts_.push_back(static_cast<int>(members_.size()));
    columns_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size();) {
        std::size_t j = i + 1;
        while (j < keys_.size() && keys_[j].x == keys_[i].x) ++j;
        columns_.emplace(keys_[i].x, std::make_pair(static_cast<int>(i), static_cast<int>(j)));
        i = j;
    }
}

CellKey GridIndex::key_of(Point p) const {
    return {cell_coord((p.x - origin_.x) / side_), cell_coord((p.y - origin_.y) / side_)};
}

std::span<const int> GridIndex::column(std::int64_t x, std::int64_t y0, std::int64_t y1) const {
    const auto it = columns_.find(x);
    if (it == columns_.end()) return {};
    const auto first = keys_.begin() + it->second.first;
    const auto last = keys_.begin() + it->second.second;
    const auto lo = std::lower_bound(first, last, CellKey{x, y0});
    const auto hi = std::upper_bound(lo, last, CellKey{x, y1});
    const auto a = static_cast<std::size_t>(starts_[static_cast<std::size_t>(lo - keys_.begin())]);
    const auto b = static_cast<std::size_t>(starts_[static_cast<std::size_t>(hi - keys_.begin())]);
    return std::span<const int>(members_).subspan(a, b - a);
}

std::span<const int> GridIndex::cell(CellKey k) const { return column(k.x, k.y, k.y); }

void GridIndex::append_block(CellKey k, int reach, std::vector<int>& out) const {
    for (std::int64_t dx = -reach; dx <= reach; ++dx) {
        const auto c = column(k.x + dx, k.y - reach, k.y + reach);
        out.insert(out.end(), c.begin(), c.end());
    }
}

std::vector<int> GridIndex::block(CellKey k, int reach) const {
    std::vector<int> out;
    append_block(k, reach, out);
    return out;
}

ShiftedGrids ShiftedGrids::for_perimeter(double W) {
    ShiftedGrids g;
    g.ell = W / (3.0 * std::sqrt(2.0));
    const double h = g.ell / 2.0;
    g.origins = {Point{0.0, 0.0}, Point{h, 0.0}, Point{0.0, h}, Point{h, h}};
    return g;
}

int ShiftedGrids::covering_grid(std::span<const Point> pts) const {
    if (pts.empty()) return 0;
    double lx = pts[0].x, hx = lx, ly = pts[0].y, hy = ly;
    for (Point p : pts) {
        lx = std::min(lx, p.x);
        hx = std::max(hx, p.x);
        ly = std::min(ly, p.y);
        hy = std::max(hy, p.y);
    }
    for (int g = 0; g < 4; ++g) {
        const Point o = origins[static_cast<std::size_t>(g)];
        if (std::floor((lx - o.x) / ell) == std::floor((hx - o.x) / ell) &&
            std::floor((ly - o.y) / ell) == std::floor((hy - o.y) / ell)) {
            return g;
        }
    }
    return -1;
}

std::optional<Triangle> planar_triangle(const SiteSet& sites, const UndirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 3) return std::nullopt;

    // Smallest-degree-first elimination (bucket queue).
    std::vector<int> deg(n), pos(n), vert(n);
    std::size_t maxdeg = 0;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(g.neighbors(static_cast<int>(v)).size());
        maxdeg = std::max(maxdeg, static_cast<std::size_t>(deg[v]));
    }
    std::vector<int> bin(maxdeg + 2, 0);
    for (std::size_t v = 0; v < n; ++v) ++bin[static_cast<std::size_t>(deg[v])];
    int start = 0;
    for (int& b : bin) {
        const int c = b;
        b = start;
        start += c;
    }
    for (std::size_t v = 0; v < n; ++v) {
        pos[v] = bin[static_cast<std::size_t>(deg[v])]++;
        vert[static_cast<std::size_t>(pos[v])] = static_cast<int>(v);
    }
    for (std::size_t d = maxdeg + 1; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int v = vert[i];
        for (const Neighbor& nb : g.neighbors(v)) {
            const int u = nb.v;
            if (deg[u] > deg[v]) {
                const int du = deg[u];
                const int pu = pos[u];
                const int pw = bin[static_cast<std::size_t>(du)];
                const int w = vert[static_cast<std::size_t>(pw)];
                if (u != w) {
                    pos[u] = pw;
                    vert[static_cast<std::size_t>(pu)] = w;
                    pos[w] = pu;
                    vert[static_cast<std::size_t>(pw)] = u;
                }
                ++bin[static_cast<std::size_t>(du)];
                --deg[u];
            }
        }
    }

    std::vector<std::vector<int>> out(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (const Neighbor& nb : g.neighbors(static_cast<int>(v))) {
            if (pos[v] < pos[nb.v]) out[v].push_back(nb.v);
        }
    }
    std::vector<int> mark(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = vert[i];
        for (int u : out[v]) mark[u] = v;
        for (int u : out[v]) {
            for (int w : out[u]) {
                if (mark[w] == v) return make_triangle(sites, v, u, w);
            }
        }
    }
    return std::nullopt;
}

std::optional<Triangle> find_triangle_disk(const SiteSet& sites) {
    if (const std::vector<int> order = sites.spatial_order(); !order.empty()) {
        const auto t = find_triangle_disk(sites.subset(order));
        return t ? std::optional<Triangle>(remap(*t, order)) : std::nullopt;
    }
    SweepOutcome out = build_plane_or_witness(sites);
    if (!out.plane) return out.witness;
    return planar_triangle(sites, out.graph);
}

namespace {

// A triangle of perimeter at most W has all vertices within W/2 of each
// other; W/2 is about 2.12 cells, so three cells in each direction suffice.
constexpr int kReach = 3;

// Cells up to this size are checked pairwise with bit masks instead of
// running the sweep.
constexpr std::size_t kBruteCell = 32;

struct CellResult {
    std::optional<Triangle> triangle;
    std::size_t large = 0;
};

// Triangle inside one cell, or the small-small edges of a triangle-free cell
// appended to `edges`.
CellResult scan_cell(const SiteSet& sites, std::span<const int> members, const std::vector<char>& large,
                     std::vector<Edge>& edges) {
    CellResult res;
    for (int m : members) res.large += large[static_cast<std::size_t>(m)] ? 1 : 0;
    const std::size_t m = members.size();
    if (m < 2) return res;
    auto both_small = [&](int a, int b) {
        return !large[static_cast<std::size_t>(a)] && !large[static_cast<std::size_t>(b)];
    };
    if (m <= kBruteCell) {
        std::array<std::uint32_t, kBruteCell> adj{};
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (disk_edge(sites[members[i]], sites[members[j]])) {
                    adj[i] |= 1u << j;
                    adj[j] |= 1u << i;
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!(adj[i] >> j & 1u)) continue;
                if (const std::uint32_t common = adj[i] & adj[j]) {
                    const auto k = static_cast<std::size_t>(std::countr_zero(common));
                    res.triangle = make_triangle(sites, members[i], members[j], members[k]);
                    return res;
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if ((adj[i] >> j & 1u) && both_small(members[i], members[j])) {
                    edges.push_back({members[i], members[j]});
                }
            }
        }
        return res;
    }
    const std::vector<int> ids(members.begin(), members.end());
    const SiteSet sub = sites.subset(ids);
    SweepOutcome out = build_plane_or_witness(sub);
    if (!out.plane) {
        res.triangle = remap(*out.witness, ids);
        return res;
    }
    if (auto t = planar_triangle(sub, out.graph)) {
        res.triangle = remap(*t, ids);
        return res;
    }
    for (const Edge& e : out.graph.edges()) {
        const int a = ids[static_cast<std::size_t>(e.u)], b = ids[static_cast<std::size_t>(e.v)];
        if (both_small(a, b)) edges.push_back({a, b});
    }
    return res;
}

struct CellEdgeRange {
    CellKey key;
    std::size_t begin = 0;
    std::size_t end = 0;
};

}  // namespace

std::optional<Triangle> decide_perimeter_witness(const SiteSet& sites, double W) {
    const std::size_t n = sites.size();
    if (n < 3 || std::isnan(W) || W <= 0.0) return std::nullopt;
    if (std::isinf(W)) return find_triangle_disk(sites);

    const ShiftedGrids grids = ShiftedGrids::for_perimeter(W);
    const double ell = grids.ell;
    const double half_w = 0.5 * W * (1.0 + 1e-12);
    std::vector<char> large(n, 0);
    std::vector<int> large_ids;
    for (std::size_t i = 0; i < n; ++i) {
        if (sites[i].r > ell / 4.0) {
            large[i] = 1;
            large_ids.push_back(static_cast<int>(i));
        }
    }

    StructuralStats& stats = structural_stats();
    std::vector<GridIndex> index;
    std::vector<GridIndex> large_index;
    std::array<std::vector<Edge>, 4> small_edges;
    std::array<std::vector<CellEdgeRange>, 4> edge_cells;
    index.reserve(4);
    large_index.reserve(4);

    // (a) a triangle inside one cell has perimeter at most 3 * diameter = W.
    for (std::size_t g = 0; g < 4; ++g) {
        index.emplace_back(sites, ell, grids.origins[g]);
        const GridIndex& grid = index.back();
        for (const CellKey& key : grid.cells()) {
            const std::size_t before = small_edges[g].size();
            const CellResult res = scan_cell(sites, grid.cell(key), large, small_edges[g]);
            if (res.triangle) return res.triangle;
            record_max(stats.max_large_per_cell, static_cast<std::int64_t>(res.large));
            if (res.large > 18) {
                ++stats.large_per_cell_violations;
                throw std::logic_error("decide_perimeter: triangle-free cell holds more than 18 large sites");
            }
            if (small_edges[g].size() > before) edge_cells[g].push_back({key, before, small_edges[g].size()});
        }
        large_index.emplace_back(sites, large_ids, ell, grids.origins[g]);
    }
    if (large_ids.empty()) return std::nullopt;

    std::vector<int> big_near, near, tlist;

    // (b) two or more large vertices.
    {
        const GridIndex& grid = index[0];
        const GridIndex& big = large_index[0];
        for (const CellKey& key : big.cells()) {
            big_near.clear();
            big.append_block(key, kReach, big_near);
            bool near_built = false;
            for (int s : big.cell(key)) {
                const Site& S = sites[s];
                tlist.clear();
                for (int t : big_near) {
                    if (t != s && dist(S, sites[t]) <= half_w && disk_edge(S, sites[t])) tlist.push_back(t);
                }
                if (tlist.empty()) continue;
                if (!near_built) {
                    near.clear();
                    grid.append_block(key, kReach, near);
                    near_built = true;
                }
                for (int u : near) {
                    if (u == s) continue;
                    const Site& U = sites[u];
                    if (dist(S, U) > half_w || !disk_edge(S, U)) continue;
                    for (int t : tlist) {
                        if (t == u || !disk_edge(sites[t], U)) continue;
                        const Triangle tri = make_triangle(sites, s, t, u);
                        if (tri.perimeter <= W) return tri;
                    }
                }
            }
        }
    }

    // (c) one large vertex and a small-small edge that lives in some cell.
    for (std::size_t g = 0; g < 4; ++g) {
        for (const CellEdgeRange& ce : edge_cells[g]) {
            big_near.clear();
            large_index[g].append_block(ce.key, kReach, big_near);
            if (big_near.empty()) continue;
            for (std::size_t i = ce.begin; i < ce.end; ++i) {
                const Edge& e = small_edges[g][i];
                const Site& A = sites[e.u];
                const Site& B = sites[e.v];
                for (int u : big_near) {
                    const Site& U = sites[u];
                    if (!disk_edge(A, U) || !disk_edge(B, U)) continue;
                    const Triangle tri = make_triangle(sites, e.u, e.v, u);
                    if (tri.perimeter <= W) return tri;
                }
            }
        }
    }
    return std::nullopt;
}

bool decide_perimeter(const SiteSet& sites, double W) { return decide_perimeter_witness(sites, W).has_value(); }

std::vector<std::vector<int>> four_way_split(std::size_t n) {
    std::vector<std::vector<int>> out(4);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i % 4 != j) out[j].push_back(static_cast<int>(i));
        }
    }
    return out;
}

namespace {

class DiskTriangleProblem {
public:
    explicit DiskTriangleProblem(SiteSet sites) : sites_(std::move(sites)) {}

    std::size_t size() const { return sites_.size(); }

    bool decide_less(double t) const { return decide_value(t).has_value(); }

    std::optional<double> decide_value(double t) const {
        const auto tri = std::isinf(t)
                             ? find_triangle_disk(sites_)
                             : decide_perimeter_witness(sites_, std::nextafter(t, -std::numeric_limits<double>::infinity()));
        if (!tri) return std::nullopt;
        return tri->perimeter;
    }

    std::vector<DiskTriangleProblem> split() const {
        std::vector<DiskTriangleProblem> out;
        for (const auto& idx : four_way_split(sites_.size())) out.emplace_back(sites_.subset(idx));
        return out;
    }

    double base_solve() const {
        const auto t = brute_shortest_triangle(sites_, build_disk_graph_brute(sites_));
        return t ? t->perimeter : std::numeric_limits<double>::infinity();
    }

private:
    SiteSet sites_;
};

}  // namespace

std::optional<Triangle> shortest_triangle_disk(const SiteSet& sites, std::uint64_t seed, ChanStats* stats) {
    if (sites.size() < 3) return std::nullopt;
    ChanConfig cfg;
    cfg.seed = seed;
    const std::vector<int> order = sites.spatial_order();
    const double w = optimize(DiskTriangleProblem(order.empty() ? sites : sites.subset(order)), cfg, stats);
    if (!std::isfinite(w)) return std::nullopt;
    auto tri = decide_perimeter_witness(sites, w);
    if (!tri) throw std::logic_error("shortest_triangle_disk: optimum has no witness");
    return tri;
}

}  // namespace geogirth

#include "geogirth/quadtree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "geogirth/diagnostics.hpp"

namespace geogirth {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

constexpr std::size_t kNeighborhoodBound = 25;

std::uint64_t last_index(int level) { return (std::uint64_t{1} << level) - 1; }

// Range of cell indices at `level` whose closed interval meets [lo, hi].
std::pair<std::uint64_t, std::uint64_t> index_span(double lo, double hi, int level) {
    const double scale = std::ldexp(1.0, level);
    const double max_idx = static_cast<double>(last_index(level));
    auto clampi = [&](double v) {
        const double f = std::floor(v * scale);
        if (!(f > 0.0)) return std::uint64_t{0};
        if (f >= max_idx) return last_index(level);
        return static_cast<std::uint64_t>(f);
    };
    // A boundary coordinate exactly on a grid line belongs to both cells.
    std::uint64_t a = clampi(lo);
    if (a > 0 && static_cast<double>(a) == lo * scale) --a;
    return {a, clampi(hi)};
}

// Sign of dist(center, cell)^2 - r^2, exact.
int sign_cell_gap_exact(const Site& s, const GridCell& c) {
    const Rational unit = Rational(1) / Rational(BigInt(1) << c.level);
    const Rational x0 = Rational(BigInt(c.ix)) * unit, x1 = x0 + unit;
    const Rational y0 = Rational(BigInt(c.iy)) * unit, y1 = y0 + unit;
    const Rational x(s.x), y(s.y), r(s.r);
    const Rational nx = x < x0 ? x0 : (x > x1 ? x1 : x);
    const Rational ny = y < y0 ? y0 : (y > y1 ? y1 : y);
    const Rational d = (x - nx) * (x - nx) + (y - ny) * (y - ny) - r * r;
    return d < 0 ? -1 : (d > 0 ? 1 : 0);
}

double cell_gap2(Point p, const GridCell& c) {
    const double side = c.side();
    const double x0 = c.x0(), y0 = c.y0();
    const double nx = std::clamp(p.x, x0, x0 + side);
    const double ny = std::clamp(p.y, y0, y0 + side);
    return (p.x - nx) * (p.x - nx) + (p.y - ny) * (p.y - ny);
}

}  // namespace

GridCell GridCell::ancestor(int at_level) const {
    const int shift = level - at_level;
    return {at_level, ix >> shift, iy >> shift};
}

bool GridCell::contains(const GridCell& other) const {
    return other.level >= level && other.ancestor(level) == *this;
}

double GridCell::side() const { return std::ldexp(1.0, -level); }
double GridCell::x0() const { return std::ldexp(static_cast<double>(ix), -level); }
double GridCell::y0() const { return std::ldexp(static_cast<double>(iy), -level); }

int child_slot(std::uint64_t x_bit, std::uint64_t y_bit) { return static_cast<int>((1 - y_bit) * 2 + x_bit); }

int z_compare(const GridCell& a, const GridCell& b) {
    if (a == b) return 0;
    const int l = std::min(a.level, b.level);
    const GridCell pa = a.ancestor(l), pb = b.ancestor(l);
    if (pa == pb) return a.level > b.level ? -1 : 1;
    const std::uint64_t diff = (pa.ix ^ pb.ix) | (pa.iy ^ pb.iy);
    const int h = 63 - std::countl_zero(diff);
    const int sa = child_slot(pa.ix >> h & 1, pa.iy >> h & 1);
    const int sb = child_slot(pb.ix >> h & 1, pb.iy >> h & 1);
    return sa < sb ? -1 : 1;
}

GridCell lowest_common_ancestor(const GridCell& a, const GridCell& b) {
    const int l = std::min(a.level, b.level);
    const GridCell pa = a.ancestor(l), pb = b.ancestor(l);
    if (pa == pb) return pa;
    const std::uint64_t diff = (pa.ix ^ pb.ix) | (pa.iy ^ pb.iy);
    const int h = 63 - std::countl_zero(diff);
    return pa.ancestor(l - h - 1);
}

GridCell point_cell(Point p) {
    if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0)) {
        throw GeometryError("point_cell: point outside the unit square");
    }
    return {kMaxLevel, static_cast<std::uint64_t>(std::ldexp(p.x, kMaxLevel)),
            static_cast<std::uint64_t>(std::ldexp(p.y, kMaxLevel))};
}

std::vector<int> z_sort(std::span<const GridCell> cells) {
    std::vector<int> idx(cells.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const int c = z_compare(cells[static_cast<std::size_t>(a)], cells[static_cast<std::size_t>(b)]);
        return c != 0 ? c < 0 : a < b;
    });
    return idx;
}

LinearizedQuadtree linearized_from_sorted(std::vector<int> site_ids, std::vector<GridCell> points) {
    LinearizedQuadtree L;
    const std::size_t m = site_ids.size();
    L.sites = std::move(site_ids);
    L.points = std::move(points);
    if (m == 0) return L;

    std::vector<int> lca_level(m > 1 ? m - 1 : 0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (L.points[i] == L.points[i + 1]) {
            throw GeometryError("quadtree: two sites share a cell at the finest resolution");
        }
        lca_level[i] = lowest_common_ancestor(L.points[i], L.points[i + 1]).level;
    }
    auto emit = [&](const GridCell& c, int first, int last) {
        L.cells.push_back(c);
        L.first.push_back(first);
        L.last.push_back(last);
    };

    struct Open {
        GridCell cell;
        int first;
    };
    std::vector<Open> stack;
    for (std::size_t i = 0; i < m; ++i) {
        int leaf_level = 0;
        if (i > 0) leaf_level = std::max(leaf_level, lca_level[i - 1] + 1);
        if (i + 1 < m) leaf_level = std::max(leaf_level, lca_level[i] + 1);
        emit(L.points[i].ancestor(leaf_level), static_cast<int>(i), static_cast<int>(i) + 1);
        if (i + 1 == m) break;
        const GridCell a = lowest_common_ancestor(L.points[i], L.points[i + 1]);
        int first = static_cast<int>(i);
        while (!stack.empty() && stack.back().cell.level > a.level) {
            emit(stack.back().cell, stack.back().first, static_cast<int>(i) + 1);
            first = stack.back().first;
            stack.pop_back();
        }
        if (stack.empty() || stack.back().cell.level < a.level) stack.push_back({a, first});
    }
    while (!stack.empty()) {
        emit(stack.back().cell, stack.back().first, static_cast<int>(m));
        stack.pop_back();
    }
    if (L.cells.back().level != 0) emit(GridCell{}, 0, static_cast<int>(m));

    const std::size_t k = L.cells.size();
    L.parent.assign(k, -1);
    L.compressed.assign(k, 0);
    std::vector<int> anc;
    for (std::size_t j = k; j-- > 0;) {
        while (!anc.empty() && !L.cells[static_cast<std::size_t>(anc.back())].contains(L.cells[j])) anc.pop_back();
        if (!anc.empty()) {
            L.parent[j] = anc.back();
            L.compressed[j] = L.cells[j].level > L.cells[static_cast<std::size_t>(anc.back())].level + 1 ? 1 : 0;
        }
        anc.push_back(static_cast<int>(j));
    }
    return L;
}

namespace {

CompressedQuadtree tree_from_linearized(const LinearizedQuadtree& L) {
    CompressedQuadtree T;
    T.nodes.resize(L.size());
    for (std::size_t j = 0; j < L.size(); ++j) {
        auto& nd = T.nodes[j];
        nd.cell = L.cells[j];
        nd.parent = L.parent[j];
        nd.compressed = L.compressed[j] != 0;
        if (L.is_leaf(j)) nd.site = L.sites[static_cast<std::size_t>(L.first[j])];
        if (nd.parent >= 0) T.nodes[static_cast<std::size_t>(nd.parent)].children.push_back(static_cast<int>(j));
    }
    T.root = L.size() == 0 ? -1 : static_cast<int>(L.size()) - 1;
    return T;
}

}  // namespace

CompressedQuadtree build_compressed_quadtree(const SiteSet& normalized, std::span<const int> ids) {
    std::vector<GridCell> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(point_cell(normalized[static_cast<std::size_t>(id)].center()));
    const std::vector<int> order = z_sort(pts);
    std::vector<int> sorted_ids;
    std::vector<GridCell> sorted_pts;
    for (int o : order) {
        sorted_ids.push_back(ids[static_cast<std::size_t>(o)]);
        sorted_pts.push_back(pts[static_cast<std::size_t>(o)]);
    }
    return tree_from_linearized(linearized_from_sorted(std::move(sorted_ids), std::move(sorted_pts)));
}

CompressedQuadtree build_compressed_quadtree(const SiteSet& normalized) {
    std::vector<int> ids(normalized.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return build_compressed_quadtree(normalized, ids);
}

LinearizedQuadtree linearize(const CompressedQuadtree& tree, const SiteSet& normalized) {
    LinearizedQuadtree L;
    if (tree.root < 0) return L;
    // Iterative postorder; each frame remembers the next child to visit.
    std::vector<std::pair<int, std::size_t>> frames{{tree.root, 0}};
    std::vector<int> start_of(tree.nodes.size(), 0);
    std::vector<int> out_index(tree.nodes.size(), -1);
    start_of[static_cast<std::size_t>(tree.root)] = 0;
    while (!frames.empty()) {
        auto& [v, next] = frames.back();
        const auto& nd = tree.nodes[static_cast<std::size_t>(v)];
        if (next == 0) {
            start_of[static_cast<std::size_t>(v)] = static_cast<int>(L.sites.size());
            if (nd.site >= 0) {
                L.sites.push_back(nd.site);
                L.points.push_back(point_cell(normalized[static_cast<std::size_t>(nd.site)].center()));
            }
        }
        if (next < nd.children.size()) {
            const int c = nd.children[next++];
            frames.push_back({c, 0});
            continue;
        }
        out_index[static_cast<std::size_t>(v)] = static_cast<int>(L.cells.size());
        L.cells.push_back(nd.cell);
        L.first.push_back(start_of[static_cast<std::size_t>(v)]);
        L.last.push_back(static_cast<int>(L.sites.size()));
        L.compressed.push_back(nd.compressed ? 1 : 0);
        frames.pop_back();
    }
    L.parent.assign(L.cells.size(), -1);
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const int p = tree.nodes[v].parent;
        if (p >= 0 && out_index[v] >= 0) {
            L.parent[static_cast<std::size_t>(out_index[v])] = out_index[static_cast<std::size_t>(p)];
        }
    }
    return L;
}

LinearizedQuadtree restrict_quadtree(const LinearizedQuadtree& parent, const std::function<bool(int)>& keep) {
    std::vector<int> ids;
    std::vector<GridCell> pts;
    for (std::size_t i = 0; i < parent.sites.size(); ++i) {
        if (keep(parent.sites[i])) {
            ids.push_back(parent.sites[i]);
            pts.push_back(parent.points[i]);
        }
    }
    return linearized_from_sorted(std::move(ids), std::move(pts));
}

std::vector<LinearizedQuadtree> descend_quadtrees(const RadiusTree& tree, const SiteSet& normalized) {
    std::vector<LinearizedQuadtree> out(tree.nodes().size());
    if (tree.empty()) return out;
    out[0] = linearize(build_compressed_quadtree(normalized), normalized);
    // Nodes are stored in preorder, so parents are ready before children.
    for (std::size_t v = 1; v < out.size(); ++v) {
        const RadiusTreeNode& nd = tree.nodes()[v];
        out[v] = restrict_quadtree(out[static_cast<std::size_t>(nd.parent)], [&](int site) {
            const int k = tree.rank(site);
            return k >= nd.lo && k < nd.hi;
        });
    }
    return out;
}

std::optional<std::size_t> z_predecessor(const LinearizedQuadtree& L, const GridCell& sigma) {
    const auto it = std::upper_bound(L.cells.begin(), L.cells.end(), sigma,
                                     [](const GridCell& a, const GridCell& b) { return z_less(a, b); });
    if (it == L.cells.begin()) return std::nullopt;
    return static_cast<std::size_t>(it - L.cells.begin()) - 1;
}

std::span<const int> sites_in_cell(const LinearizedQuadtree& L, const GridCell& sigma,
                                   std::optional<std::size_t> pred) {
    if (pred && sigma.contains(L.cells[*pred])) return L.sites_of(*pred);
    const std::size_t succ = pred ? *pred + 1 : 0;
    if (succ < L.size() && L.is_leaf(succ) && L.cells[succ].contains(sigma) &&
        sigma.contains(L.points[static_cast<std::size_t>(L.first[succ])])) {
        return L.sites_of(succ);
    }
    return {};
}

std::span<const int> sites_in_cell(const LinearizedQuadtree& L, const GridCell& sigma) {
    return sites_in_cell(L, sigma, z_predecessor(L, sigma));
}

int neighborhood_level(double r) {
    if (!(r > 0.0)) throw GeometryError("neighborhood_level: radius must be positive");
    if (r >= 1.0) return 0;
    return std::clamp(-std::ilogb(r), 0, kMaxLevel);
}

std::vector<GridCell> neighborhood(const Site& s) {
    const int k = neighborhood_level(s.r);
    const auto [x_lo, x_hi] = index_span(s.x - s.r, s.x + s.r, k);
    const auto [y_lo, y_hi] = index_span(s.y - s.r, s.y + s.r, k);
    std::vector<GridCell> out;
    const double r2 = s.r * s.r;
    for (std::uint64_t ix = x_lo; ix <= x_hi; ++ix) {
        for (std::uint64_t iy = y_lo; iy <= y_hi; ++iy) {
            const GridCell c{k, ix, iy};
            const double g = cell_gap2(s.center(), c) - r2;
            const bool near = std::abs(g) <= 1e-9 * r2 + 1e-300;
            const bool meets = near ? sign_cell_gap_exact(s, c) <= 0 : g < 0.0;
            if (meets) out.push_back(c);
        }
    }
    StructuralStats& stats = structural_stats();
    record_max(stats.max_neighborhood_cells, static_cast<std::int64_t>(out.size()));
    if (out.size() > kNeighborhoodBound) {
        ++stats.neighborhood_violations;
        throw std::logic_error("neighborhood: more than 25 cells meet a disk");
    }
    return out;
}

std::vector<GridCell> neighborhood_cover(const Site& s, double slack) {
    const int k = neighborhood_level(s.r);
    const double rr = s.r + slack;
    const auto [x_lo, x_hi] = index_span(s.x - rr, s.x + rr, k);
    const auto [y_lo, y_hi] = index_span(s.y - rr, s.y + rr, k);
    std::vector<GridCell> out;
    for (std::uint64_t ix = x_lo; ix <= x_hi; ++ix) {
        for (std::uint64_t iy = y_lo; iy <= y_hi; ++iy) {
            const GridCell c{k, ix, iy};
            if (cell_gap2(s.center(), c) <= rr * rr) out.push_back(c);
        }
    }
    return out;
}

}  // namespace geogirth

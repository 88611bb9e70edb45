#include "geogirth/tx_triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "geogirth/diagnostics.hpp"
#include "geogirth/disk_triangle.hpp"
#include "geogirth/range_search.hpp"

namespace geogirth {

namespace {

Triangle make_cycle(const SiteSet& sites, int a, int b, int c) {
    return {{a, b, c}, perimeter(sites[static_cast<std::size_t>(a)], sites[static_cast<std::size_t>(b)],
                                 sites[static_cast<std::size_t>(c)])};
}

bool arc(const SiteSet& sites, int a, int b) {
    return tx_edge(sites[static_cast<std::size_t>(a)], sites[static_cast<std::size_t>(b)]);
}

// Exhaustive search over a handful of sites. Returns the first directed
// triangle, or the one of least perimeter when `shortest` is set.
std::optional<Triangle> triangle_among(const SiteSet& sites, std::span<const int> ids, bool shortest) {
    const std::size_t k = ids.size();
    std::vector<char> m(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j) m[i * k + j] = arc(sites, ids[i], ids[j]) ? 1 : 0;
        }
    }
    std::optional<Triangle> best;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!m[i * k + j] && !m[j * k + i]) continue;
            for (std::size_t l = j + 1; l < k; ++l) {
                std::optional<Triangle> t;
                if (m[i * k + j] && m[j * k + l] && m[l * k + i]) {
                    t = make_cycle(sites, ids[i], ids[j], ids[l]);
                } else if (m[i * k + l] && m[l * k + j] && m[j * k + i]) {
                    t = make_cycle(sites, ids[i], ids[l], ids[j]);
                }
                if (!t) continue;
                if (!shortest) return t;
                if (!best || t->perimeter < best->perimeter) best = t;
            }
        }
    }
    return best;
}

// Any kCrowdLimit + 1 sites of radius >= side/4 in a square of that side
// contain three in one sixth-size subsquare, pairwise within each other's
// disks.
std::optional<Triangle> triangle_in_crowd(const SiteSet& sites, const CrowdedSquare& sq, bool shortest) {
    const std::size_t k = std::min(sq.members.size(), kCrowdLimit + 1);
    auto t = triangle_among(sites, std::span<const int>(sq.members).first(k), shortest);
    if (!t) throw std::logic_error("crowded square without a directed triangle");
    return t;
}

constexpr std::size_t kSmallBrute = 8;

}  // namespace

std::optional<Triangle> find_directed_triangle(const SiteSet& sites) {
    const std::size_t n = sites.size();
    if (n < 3) return std::nullopt;
    if (const std::vector<int> order = sites.spatial_order(); !order.empty()) {
        const auto t = find_directed_triangle(sites.subset(order));
        return t ? std::optional<Triangle>(remap(*t, order)) : std::nullopt;
    }
    if (n <= kSmallBrute) {
        std::vector<int> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
        return triangle_among(sites, ids, false);
    }

    const R1Outcome r1 = solve_R1(sites);
    if (r1.crowded) return triangle_in_crowd(sites, *r1.crowded, false);
    const auto& out = r1.edges;

    std::vector<R2Query> queries;
    std::vector<int> query_target;
    for (std::size_t s = 0; s < n; ++s) {
        const Site& ss = sites[s];
        for (int t : out[s]) {
            const Site& st = sites[static_cast<std::size_t>(t)];
            if (!radius_less(ss, st)) continue;
            for (int u : out[static_cast<std::size_t>(t)]) {
                if (u != static_cast<int>(s) && arc(sites, u, static_cast<int>(s))) {
                    return make_cycle(sites, static_cast<int>(s), t, u);
                }
            }
            if (st.r > 2.0 * ss.r) {
                queries.push_back({static_cast<int>(s), ss.r, st.r / 2.0});
                query_target.push_back(t);
            }
        }
    }

    const auto hit = solve_R2(sites, queries);
    if (!hit) return std::nullopt;
    const int s = queries[hit->query].s;
    const int t = query_target[hit->query];
    if (!arc(sites, t, hit->u)) throw std::logic_error("find_directed_triangle: second test closed no triangle");
    return make_cycle(sites, s, t, hit->u);
}

std::optional<Triangle> decide_tx_perimeter_witness(const SiteSet& sites, double W) {
    const std::size_t n = sites.size();
    if (n < 3 || !(W > 0.0)) return std::nullopt;
    auto& stats = structural_stats();
    const double ell = W / std::sqrt(27.0);

    std::vector<char> large(n, 0);
    std::vector<int> small_ids;
    for (std::size_t i = 0; i < n; ++i) {
        if (sites[i].r > ell) {
            large[i] = 1;
        } else {
            small_ids.push_back(static_cast<int>(i));
        }
    }
    auto accept = [&](std::optional<Triangle> t) -> std::optional<Triangle> {
        if (t && !(t->perimeter <= W)) throw std::logic_error("decide_tx_perimeter: short-triangle bound violated");
        return t;
    };

    // Every triangle among small sites fits in the disk of its largest
    // vertex, so its perimeter is at most 3*sqrt(3)*ell = W.
    if (small_ids.size() >= 3) {
        if (auto t = find_directed_triangle(sites.subset(small_ids))) return accept(remap(*t, small_ids));
    }

    // Incoming edges of large sites from small ones.
    std::vector<std::vector<int>> in(n);
    if (!small_ids.empty() && small_ids.size() < n) {
        std::vector<char> mask(n, 0);
        for (int s : small_ids) mask[static_cast<std::size_t>(s)] = 1;
        const R1Outcome r1 = solve_R1(sites, mask);
        if (r1.crowded) return accept(triangle_in_crowd(sites, *r1.crowded, true));
        for (int s : small_ids) {
            for (int t : r1.edges[static_cast<std::size_t>(s)]) {
                if (large[static_cast<std::size_t>(t)]) in[static_cast<std::size_t>(t)].push_back(s);
            }
        }
        std::int64_t max_in = 0;
        for (std::size_t t = 0; t < n; ++t) {
            max_in = std::max<std::int64_t>(max_in, static_cast<std::int64_t>(in[t].size()));
            if (in[t].size() < 7) continue;
            // Two of seven in-neighbors make an angle below 60 degrees at t.
            std::vector<int> ids{static_cast<int>(t)};
            ids.insert(ids.end(), in[t].begin(), in[t].begin() + 7);
            auto tri = triangle_among(sites, ids, true);
            if (!tri || !(tri->perimeter <= W)) {
                stats.small_indegree_violations.fetch_add(1, std::memory_order_relaxed);
                throw std::logic_error("decide_tx_perimeter: seven small in-neighbors without a short triangle");
            }
            return tri;
        }
        record_max(stats.max_small_indegree, max_in);
    }

    // Triangles inside one cell of side ell/sqrt(2) are short. Three large
    // sites in a cell cover each other.
    const GridIndex grid(sites, ell / std::sqrt(2.0));
    for (const CellKey& key : grid.cells()) {
        const std::span<const int> members = grid.cell(key);
        if (members.size() < 3) continue;
        std::vector<int> big;
        for (int m : members) {
            if (large[static_cast<std::size_t>(m)]) big.push_back(m);
        }
        if (big.size() >= 3) return accept(make_cycle(sites, big[0], big[1], big[2]));
        std::optional<Triangle> t;
        if (members.size() <= kSmallBrute) {
            t = triangle_among(sites, members, false);
        } else {
            const std::vector<int> ids(members.begin(), members.end());
            if (auto local = find_directed_triangle(sites.subset(ids))) t = remap(*local, ids);
        }
        if (t) return accept(t);
    }

    // Remaining triangles t -> s -> u -> t with t large. Each side is at most
    // W/2, so s and u lie in the 9x9 block around the cell of t. The
    // in-neighbor u is one of the few small ones found above or a large site.
    const double half2 = 0.25 * W * W * (1.0 + 1e-9);
    std::vector<int> block;
    std::vector<int> U;
    for (std::size_t ti = 0; ti < n; ++ti) {
        if (!large[ti]) continue;
        const int t = static_cast<int>(ti);
        const Site& st = sites[ti];
        block.clear();
        grid.append_block(grid.key_of(st.center()), 4, block);
        U = in[ti];
        for (int u : block) {
            if (u != t && large[static_cast<std::size_t>(u)] && arc(sites, u, t)) U.push_back(u);
        }
        if (U.empty()) continue;
        for (int s : block) {
            if (s == t) continue;
            const Site& ss = sites[static_cast<std::size_t>(s)];
            const double dx = ss.x - st.x, dy = ss.y - st.y;
            if (dx * dx + dy * dy > half2 || !arc(sites, t, s)) continue;
            for (int u : U) {
                if (u == s || !arc(sites, s, u)) continue;
                const Triangle tri = make_cycle(sites, t, s, u);
                if (tri.perimeter <= W) return tri;
            }
        }
    }
    return std::nullopt;
}

bool decide_tx_perimeter(const SiteSet& sites, double W) { return decide_tx_perimeter_witness(sites, W).has_value(); }

namespace {

class TxTriangleProblem {
public:
    explicit TxTriangleProblem(SiteSet sites) : sites_(std::move(sites)) {}

    std::size_t size() const { return sites_.size(); }

    bool decide_less(double t) const { return decide_value(t).has_value(); }

    std::optional<double> decide_value(double t) const {
        const auto tri = std::isinf(t) ? find_directed_triangle(sites_)
                                       : decide_tx_perimeter_witness(
                                             sites_, std::nextafter(t, -std::numeric_limits<double>::infinity()));
        if (!tri) return std::nullopt;
        return tri->perimeter;
    }

    std::vector<TxTriangleProblem> split() const {
        std::vector<TxTriangleProblem> out;
        for (const auto& idx : four_way_split(sites_.size())) out.emplace_back(sites_.subset(idx));
        return out;
    }

    double base_solve() const {
        const auto t = brute_shortest_triangle(sites_, build_tx_graph_brute(sites_));
        return t ? t->perimeter : std::numeric_limits<double>::infinity();
    }

private:
    SiteSet sites_;
};

}  // namespace

std::optional<Triangle> shortest_triangle_tx(const SiteSet& sites, std::uint64_t seed, ChanStats* stats) {
    if (sites.size() < 3) return std::nullopt;
    ChanConfig cfg;
    cfg.seed = seed;
    const std::vector<int> order = sites.spatial_order();
    const double w = optimize(TxTriangleProblem(order.empty() ? sites : sites.subset(order)), cfg, stats);
    if (!std::isfinite(w)) return std::nullopt;
    auto tri = decide_tx_perimeter_witness(sites, w);
    if (!tri) throw std::logic_error("shortest_triangle_tx: optimum has no witness");
    return tri;
}

}  // namespace geogirth

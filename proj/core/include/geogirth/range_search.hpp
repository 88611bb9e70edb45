#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geogirth/geometry.hpp"
#include "geogirth/hull3d.hpp"
#include "geogirth/radius_tree.hpp"

namespace geogirth {

/// Largest out-list the batched edge search may report. A disk or grid cell
/// holding more sites of comparable radius certifies a directed triangle.
constexpr std::size_t kCrowdLimit = 72;

/// An axis-parallel square of the input coordinates together with more
/// than kCrowdLimit sites inside it, each of radius at least side/4.
struct CrowdedSquare {
    double x0 = 0.0;
    double y0 = 0.0;
    double side = 0.0;
    std::vector<int> members;
};

/// Result of the batched out-edge search. Either every queried site s has
/// its list of t != s with t in D_s and r_t >= r_s/2 (sorted, at most
/// kCrowdLimit long), or a crowded square was found and `edges` is empty.
struct R1Outcome {
    std::optional<CrowdedSquare> crowded;
    std::vector<std::vector<int>> edges;

    bool is_crowded() const { return crowded.has_value(); }
};

/// Batched out-edge search over compressed quadtrees of the canonical radius
/// intervals. `query_mask`, when non-empty, selects the sites whose lists
/// are computed; lists of the others stay empty. Candidate sites are always
/// all of S.
R1Outcome solve_R1(const SiteSet& sites, std::span<const char> query_mask = {});

/// Quadratic filter with the same contract; reports a crowded square only
/// when some disk holds too many qualifying sites.
R1Outcome brute_R1(const SiteSet& sites, std::span<const char> query_mask = {});

/// True if the certificate holds more than kCrowdLimit distinct sites, all
/// inside the square and all of radius >= side/4.
bool verify_crowded_square(const SiteSet& sites, const CrowdedSquare& square);

/// Query "is s inside some D_u with u != s and r1 <= r_u < r2".
struct R2Query {
    int s = 0;
    double r1 = 0.0;
    double r2 = 0.0;
};

struct R2Answer {
    int u = 0;
    std::size_t query = 0;  // index into the query list
};

/// Answers one covered query if any exists, using the lifted union polytope
/// of each canonical radius interval and hill climbing over it.
std::optional<R2Answer> solve_R2(const SiteSet& sites, std::span<const R2Query> queries);
std::optional<R2Answer> brute_R2(const SiteSet& sites, std::span<const R2Query> queries);

/// Dual point of the halfspace of a lifted disk: (2x, 2y, r^2 - x^2 - y^2).
/// A point p lies in the disk iff dot((p.x, p.y, 1), dual) >= p.x^2 + p.y^2.
Vec3 lift_dual(const Site& s);

/// Per radius-tree node v, the upper hull of the dual points of its canonical
/// interval; hull indices refer to positions in tree.interval(v). The union
/// of the disks is exactly the set where the hull maximum beats the
/// paraboloid. `normalized` must be the normalized copy of the tree's sites.
std::vector<Hull3> build_union_polytopes(const RadiusTree& tree, const SiteSet& normalized);

/// Lifted query points assigned to one node, deduplicated by site.
struct QueryHull {
    std::vector<int> sites;  // empty when no query has this canonical node
    Hull3 hull;              // indices into `sites`
};

/// Per node, the hull of the lifted query sites whose radius range has the
/// node as a canonical node (the querying site itself excluded).
std::vector<QueryHull> build_query_hulls(const RadiusTree& tree, const SiteSet& normalized,
                                         std::span<const R2Query> queries);

}  // namespace geogirth

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geogirth/geometry.hpp"
#include "geogirth/graph.hpp"

namespace geogirth {

enum class ArcHalf { Lower, Upper };

/// One x-monotone half of a site's boundary circle.
struct ArcSegment {
    int owner = 0;
    ArcHalf half = ArcHalf::Lower;
    Point left;
    Point right;
};

ArcSegment make_arc(const Site& s, ArcHalf half);

/// A boundary-boundary intersection between the circles of `a` and `b`.
struct ArcIntersection {
    int a = 0;
    int b = 0;
    Point p;
};

struct ArcSweepResult {
    bool exceeded = false;
    /// Reported intersections in sweep (x) order. When `exceeded` is set the
    /// list holds exactly limit + 1 entries.
    std::vector<ArcIntersection> points;
};

/// Sweeps the 2n boundary arcs left to right and reports their pairwise
/// intersections. Stops after limit + 1 reports.
ArcSweepResult arc_intersections_bounded(const SiteSet& sites, std::size_t limit);

/// Every pair whose disks are nested (one contains the other), each once
/// with u < v.
std::vector<Edge> containment_edges(const SiteSet& sites);

/// Proper crossing of the straight segments between the centers of the two
/// edges. Edges sharing an endpoint never cross.
bool segments_cross(const SiteSet& sites, Edge e, Edge f);

/// Sweep-based search for one pair of properly crossing edges.
std::optional<std::pair<Edge, Edge>> find_segment_crossing(const SiteSet& sites, std::span<const Edge> edges);

/// Quadratic reference for find_segment_crossing.
std::optional<std::pair<Edge, Edge>> brute_segment_crossing(const SiteSet& sites, std::span<const Edge> edges);

/// A triangle of the disk graph together with a point shared by its three
/// disks.
struct CrossingTriangle {
    Triangle triangle;
    Point common;
};

/// Given disk-graph edges st and uv whose segments cross, returns three of
/// the four sites with a common point. Throws std::invalid_argument when the
/// edges are not disk-graph edges, share a site, or do not cross.
CrossingTriangle triangle_from_crossing(const SiteSet& sites, int s, int t, int u, int v);

/// Either the full disk graph with a plane straight-line embedding, or a
/// triangle that certifies the graph is not plane.
struct SweepOutcome {
    bool plane = true;
    UndirectedGraph graph;
    std::optional<Triangle> witness;
};

SweepOutcome build_plane_or_witness(const SiteSet& sites);

}  // namespace geogirth

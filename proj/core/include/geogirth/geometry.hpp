#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geogirth {

/// Raised when an input violates the general-position requirements
/// (coincident sites, coincident circles, non-positive radii).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A planar site with its associated disk. `id` is the dense index of the
/// site inside its owning SiteSet.
struct Site {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double r = 1.0;

    Point center() const { return {x, y}; }
};

/// Affine map p -> (p - origin) * scale. Lengths scale by `scale`.
struct Normalization {
    double scale = 1.0;
    double origin_x = 0.0;
    double origin_y = 0.0;

    Point apply(Point p) const { return {(p.x - origin_x) * scale, (p.y - origin_y) * scale}; }
    Point invert(Point p) const { return {p.x / scale + origin_x, p.y / scale + origin_y}; }
    double to_original_length(double len) const { return len / scale; }
};

/// Deterministic tie-breaking and comparison tolerance.
struct ToleranceConfig {
    /// Relative slack for distance/weight comparisons. Zero means every
    /// predicate is an exact sign evaluation.
    double eps_dist = 0.0;
};

/// Immutable, validated list of sites with ids 0..n-1.
class SiteSet {
public:
    SiteSet() = default;

    /// Validates and renumbers. Throws GeometryError on r <= 0, non-finite
    /// input or two sites sharing a center.
    explicit SiteSet(std::vector<Site> sites);

    static SiteSet from_xyr(std::span<const std::array<double, 3>> rows);

    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    const Site& operator[](std::size_t i) const { return sites_[i]; }
    std::span<const Site> sites() const { return sites_; }
    auto begin() const { return sites_.begin(); }
    auto end() const { return sites_.end(); }

    const Normalization& normalization() const { return norm_; }

    /// Copy mapped into the open unit square (bounding square of all disks,
    /// expanded by 1%). Ids are preserved.
    SiteSet normalized() const;

    /// Sites at `indices`, renumbered 0..k-1 in the given order.
    SiteSet subset(std::span<const int> indices) const;

    /// Sorted-by-(r, id) order; the tie rule for equal radii.
    std::vector<int> order_by_radius() const;

    /// Indices in Z-order of the centers, a cache-friendly processing order
    /// for large inputs. Empty when the sites are already in this order.
    /// The key depends on the coordinates alone, so subsets of a sorted set
    /// stay sorted.
    std::vector<int> spatial_order() const;

private:
    std::vector<Site> sites_;
    Normalization norm_{};
};

/// Strict total order on sites by (radius, id).
inline bool radius_less(const Site& a, const Site& b) {
    return a.r < b.r || (a.r == b.r && a.id < b.id);
}

double dist(const Site& a, const Site& b);
double dist(Point a, Point b);

/// Sign of |ab|^2 - (ra + rb)^2 (or the given polynomial) evaluated exactly.
int sign_disk_gap(const Site& a, const Site& b);
/// Sign of |ab|^2 - ra^2.
int sign_tx_gap(const Site& a, const Site& b);
/// Sign of |pc|^2 - r^2.
int sign_point_in_disk(Point p, const Site& disk);

/// Undirected disk-graph adjacency: disks of a and b intersect.
inline bool disk_edge(const Site& a, const Site& b) { return sign_disk_gap(a, b) <= 0; }
/// Directed transmission arc a -> b: b lies in the disk of a.
inline bool tx_edge(const Site& a, const Site& b) { return sign_tx_gap(a, b) <= 0; }
inline bool point_in_disk(Point p, const Site& disk) { return sign_point_in_disk(p, disk) <= 0; }

/// True if the disk of `inner` lies inside the disk of `outer`
/// (|inner outer| + r_inner <= r_outer), evaluated without square roots.
bool disk_contains_disk(const Site& outer, const Site& inner);

/// Intersection points of the two boundary circles, sorted by (y, x).
/// Empty for disjoint or nested circles; one point for tangency.
/// Throws GeometryError for coincident circles.
struct CirclePoints {
    std::array<Point, 2> pts{};
    std::size_t count = 0;

    std::size_t size() const { return count; }
    bool empty() const { return count == 0; }
    const Point& operator[](std::size_t i) const { return pts[i]; }
    const Point* begin() const { return pts.data(); }
    const Point* end() const { return pts.data() + count; }
};
CirclePoints circle_circle_points(const Site& a, const Site& b);

/// Sign of the orientation determinant of (a, b, c): positive for a left
/// turn. Exact for all finite inputs.
int orient2d(Point a, Point b, Point c);

/// A point lying in all three disks, or nullopt. The candidates are the
/// leftmost point of each disk and every pairwise boundary intersection,
/// which covers the leftmost point of any nonempty triple intersection.
/// Membership allows a relative slack of `rel_tol`.
std::optional<Point> common_point(const Site& a, const Site& b, const Site& c, double rel_tol = 1e-9);

/// Membership with a relative slack, for numerically constructed points.
bool point_in_disk_tol(Point p, const Site& disk, double rel_tol);

/// Perimeter of the triangle on three sites. Terms are summed in
/// lexicographic (x, y) order of the centers, so the value does not depend
/// on ids and is bit-identical across subsets.
double perimeter(const Site& a, const Site& b, const Site& c);

/// Upper halfspace z >= a x + b y + c whose trace on the paraboloid projects
/// to the complement of a disk.
struct LiftedHalfspace {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double eval(double x, double y) const { return a * x + b * y + c; }
};

struct LiftedPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

LiftedHalfspace lift_site(const Site& s);
LiftedPoint lift_point(Point p);

/// The lifted point lies on or below the plane, i.e. p is in the disk.
inline bool violates(const LiftedPoint& p, const LiftedHalfspace& h) { return p.z <= h.eval(p.x, p.y); }

}  // namespace geogirth

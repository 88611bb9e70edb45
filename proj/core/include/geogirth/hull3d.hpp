#pragma once

#include <array>
#include <span>
#include <vector>

namespace geogirth {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Sign of ((b - a) x (c - a)) . (d - a), exact for finite inputs: positive
/// when d lies on the side the normal of the counterclockwise triangle abc
/// points to.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Convex hull of a 3D point set. Faces are triangles oriented outward;
/// coplanar neighbors may remain split. `degenerate` is set when there are
/// fewer than four points or all of them are coplanar, in which case only
/// `vertices` is meaningful (it then lists every input index).
struct Hull3 {
    bool degenerate = false;
    std::vector<int> vertices;                  // input indices
    std::vector<std::vector<int>> adjacency;    // by position in `vertices`
    std::vector<std::array<int, 3>> faces;      // input indices
};

Hull3 convex_hull_3d(std::span<const Vec3> pts);

/// Position in h.vertices of a vertex maximizing dot(dir, p), by greedy
/// ascent over hull edges from position `start`. On a convex polytope every
/// vertex without a strictly better neighbor is a global maximum.
std::size_t hill_climb(const Hull3& h, std::span<const Vec3> pts, const Vec3& dir, std::size_t start);

}  // namespace geogirth

#include "geogirth/hull3d.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace geogirth {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Rational ax(a.x), ay(a.y), az(a.z);
    const Rational ux = Rational(b.x) - ax, uy = Rational(b.y) - ay, uz = Rational(b.z) - az;
    const Rational vx = Rational(c.x) - ax, vy = Rational(c.y) - ay, vz = Rational(c.z) - az;
    const Rational wx = Rational(d.x) - ax, wy = Rational(d.y) - ay, wz = Rational(d.z) - az;
    const Rational det = (uy * vz - uz * vy) * wx + (uz * vx - ux * vz) * wy + (ux * vy - uy * vx) * wz;
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

struct Face {
    std::array<int, 3> v{};
    std::array<int, 3> nb{-1, -1, -1};  // nb[i] is across edge v[i] -> v[i+1]
    std::vector<int> outside;
    bool alive = true;
};

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Vec3 u = sub(b, a), v = sub(c, a), w = sub(d, a);
    const double m1 = u.y * v.z - u.z * v.y, m2 = u.z * v.x - u.x * v.z, m3 = u.x * v.y - u.y * v.x;
    const double det = m1 * w.x + m2 * w.y + m3 * w.z;
    const double perm = (std::abs(u.y * v.z) + std::abs(u.z * v.y)) * std::abs(w.x) +
                        (std::abs(u.z * v.x) + std::abs(u.x * v.z)) * std::abs(w.y) +
                        (std::abs(u.x * v.y) + std::abs(u.y * v.x)) * std::abs(w.z);
    const double bound = 1e-14 * perm;
    if (det > bound) return 1;
    if (det < -bound) return -1;
    return orient3d_exact(a, b, c, d);
}

Hull3 convex_hull_3d(std::span<const Vec3> pts) {
    Hull3 h;
    const std::size_t n = pts.size();
    auto all_vertices = [&] {
        h.degenerate = true;
        h.vertices.resize(n);
        for (std::size_t i = 0; i < n; ++i) h.vertices[i] = static_cast<int>(i);
        return h;
    };
    if (n < 4) return all_vertices();

    // Initial tetrahedron from extreme points.
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (pts[i].x < pts[i0].x) i0 = i;
    }
    std::size_t i1 = i0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 d = sub(pts[i], pts[i0]);
        if (dot(d, d) > best) best = dot(d, d), i1 = i;
    }
    if (i1 == i0) return all_vertices();
    std::size_t i2 = i0;
    best = 0.0;
    const Vec3 e01 = sub(pts[i1], pts[i0]);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 c = cross(e01, sub(pts[i], pts[i0]));
        if (dot(c, c) > best) best = dot(c, c), i2 = i;
    }
    if (i2 == i0) return all_vertices();
    std::size_t i3 = n;
    best = -1.0;
    const Vec3 nrm = cross(e01, sub(pts[i2], pts[i0]));
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(dot(nrm, sub(pts[i], pts[i0])));
        if (d > best && orient3d(pts[i0], pts[i1], pts[i2], pts[i]) != 0) best = d, i3 = i;
    }
    if (i3 == n) return all_vertices();

    std::vector<Face> faces;
    const std::array<int, 4> tet{static_cast<int>(i0), static_cast<int>(i1), static_cast<int>(i2),
                                 static_cast<int>(i3)};
    const std::array<std::array<int, 4>, 4> combos{{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}}};
    for (const auto& c : combos) {
        Face f;
        f.v = {tet[c[0]], tet[c[1]], tet[c[2]]};
        if (orient3d(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[tet[c[3]]]) > 0) std::swap(f.v[1], f.v[2]);
        faces.push_back(f);
    }
    // Link the tetrahedron by matching reversed directed edges.
    for (std::size_t f = 0; f < 4; ++f) {
        for (int e = 0; e < 3; ++e) {
            const int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
            for (std::size_t g = 0; g < 4; ++g) {
                if (g == f) continue;
                for (int k = 0; k < 3; ++k) {
                    if (faces[g].v[k] == b && faces[g].v[(k + 1) % 3] == a) faces[f].nb[e] = static_cast<int>(g);
                }
            }
        }
    }

    auto visible = [&](const Face& f, int p) {
        return orient3d(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[p]) > 0;
    };
    auto height = [&](const Face& f, int p) {
        const Vec3 nn = cross(sub(pts[f.v[1]], pts[f.v[0]]), sub(pts[f.v[2]], pts[f.v[0]]));
        return dot(nn, sub(pts[p], pts[f.v[0]]));
    };

    for (std::size_t i = 0; i < n; ++i) {
        const int p = static_cast<int>(i);
        if (p == tet[0] || p == tet[1] || p == tet[2] || p == tet[3]) continue;
        for (auto& f : faces) {
            if (visible(f, p)) {
                f.outside.push_back(p);
                break;
            }
        }
    }

    std::vector<int> pending{0, 1, 2, 3};
    std::vector<std::uint32_t> seen;
    std::uint32_t round = 0;
    std::vector<int> vis, stack, orphans;
    struct HorizonEdge {
        int a, b, outer;
    };
    std::vector<HorizonEdge> horizon;
    while (!pending.empty()) {
        const int fi = pending.back();
        pending.pop_back();
        if (!faces[static_cast<std::size_t>(fi)].alive || faces[static_cast<std::size_t>(fi)].outside.empty()) continue;

        int eye = -1;
        double far = -1.0;
        for (int p : faces[static_cast<std::size_t>(fi)].outside) {
            const double d = height(faces[static_cast<std::size_t>(fi)], p);
            if (d > far) far = d, eye = p;
        }

        ++round;
        seen.resize(faces.size(), 0);
        vis.clear();
        horizon.clear();
        stack.assign(1, fi);
        seen[static_cast<std::size_t>(fi)] = round;
        while (!stack.empty()) {
            const int g = stack.back();
            stack.pop_back();
            vis.push_back(g);
            for (int e = 0; e < 3; ++e) {
                const int nb = faces[static_cast<std::size_t>(g)].nb[e];
                if (seen[static_cast<std::size_t>(nb)] == round) continue;
                if (visible(faces[static_cast<std::size_t>(nb)], eye)) {
                    seen[static_cast<std::size_t>(nb)] = round;
                    stack.push_back(nb);
                }
            }
        }
        for (int g : vis) {
            const Face& f = faces[static_cast<std::size_t>(g)];
            for (int e = 0; e < 3; ++e) {
                if (seen[static_cast<std::size_t>(f.nb[e])] != round) horizon.push_back({f.v[e], f.v[(e + 1) % 3], f.nb[e]});
            }
        }

        orphans.clear();
        for (int g : vis) {
            Face& f = faces[static_cast<std::size_t>(g)];
            f.alive = false;
            for (int p : f.outside) {
                if (p != eye) orphans.push_back(p);
            }
            f.outside.clear();
            f.outside.shrink_to_fit();
        }

        std::unordered_map<int, int> starts_at, ends_at;
        const std::size_t base = faces.size();
        for (const HorizonEdge& he : horizon) {
            Face f;
            f.v = {he.a, he.b, eye};
            f.nb[0] = he.outer;
            const int idx = static_cast<int>(faces.size());
            Face& outer = faces[static_cast<std::size_t>(he.outer)];
            for (int k = 0; k < 3; ++k) {
                if (outer.v[k] == he.b && outer.v[(k + 1) % 3] == he.a) outer.nb[k] = idx;
            }
            starts_at[he.a] = idx;
            ends_at[he.b] = idx;
            faces.push_back(std::move(f));
        }
        for (std::size_t k = base; k < faces.size(); ++k) {
            Face& f = faces[k];
            f.nb[1] = starts_at.at(f.v[1]);  // edge b -> eye meets the face starting at b
            f.nb[2] = ends_at.at(f.v[0]);    // edge eye -> a meets the face ending at a
        }
        for (int p : orphans) {
            for (std::size_t k = base; k < faces.size(); ++k) {
                if (visible(faces[k], p)) {
                    faces[k].outside.push_back(p);
                    break;
                }
            }
        }
        for (std::size_t k = base; k < faces.size(); ++k) {
            if (!faces[k].outside.empty()) pending.push_back(static_cast<int>(k));
        }
    }

    std::unordered_map<int, int> slot;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        h.faces.push_back(f.v);
        for (int v : f.v) {
            if (slot.emplace(v, static_cast<int>(h.vertices.size())).second) h.vertices.push_back(v);
        }
    }
    h.adjacency.resize(h.vertices.size());
    for (const auto& f : h.faces) {
        for (int e = 0; e < 3; ++e) {
            // Each undirected edge appears once per direction; record one.
            const int a = slot.at(f[static_cast<std::size_t>(e)]);
            const int b = slot.at(f[static_cast<std::size_t>((e + 1) % 3)]);
            h.adjacency[static_cast<std::size_t>(a)].push_back(b);
        }
    }
    return h;
}

std::size_t hill_climb(const Hull3& h, std::span<const Vec3> pts, const Vec3& dir, std::size_t start) {
    std::size_t cur = start;
    double val = dot(dir, pts[static_cast<std::size_t>(h.vertices[cur])]);
    for (;;) {
        std::size_t next = cur;
        double next_val = val;
        for (int nb : h.adjacency[cur]) {
            const double v = dot(dir, pts[static_cast<std::size_t>(h.vertices[static_cast<std::size_t>(nb)])]);
            if (v > next_val) next_val = v, next = static_cast<std::size_t>(nb);
        }
        if (next == cur) return cur;
        cur = next;
        val = next_val;
    }
}

}  // namespace geogirth

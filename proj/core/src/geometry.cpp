#include "geogirth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace geogirth {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Relative error bound for the short polynomials below, evaluated in double.
constexpr double kFilter = 1e-14;

struct PairHash {
    std::size_t operator()(const std::pair<double, double>& p) const {
        const std::size_t h1 = std::hash<double>{}(p.first);
        const std::size_t h2 = std::hash<double>{}(p.second);
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

void validate(const std::vector<Site>& sites) {
    std::unordered_set<std::pair<double, double>, PairHash> centers;
    centers.reserve(sites.size() * 2);
    for (const Site& s : sites) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.r)) {
            throw GeometryError("site " + std::to_string(s.id) + " has a non-finite coordinate");
        }
        if (!(s.r > 0.0)) {
            throw GeometryError("site " + std::to_string(s.id) + " has non-positive radius");
        }
        if (!centers.emplace(s.x, s.y).second) {
            throw GeometryError("site " + std::to_string(s.id) + " coincides with another site");
        }
    }
}

int sign_of(const Rational& v) { return v.sign(); }

}  // namespace

SiteSet::SiteSet(std::vector<Site> sites) : sites_(std::move(sites)) {
    for (std::size_t i = 0; i < sites_.size(); ++i) sites_[i].id = static_cast<int>(i);
    validate(sites_);
}

SiteSet SiteSet::from_xyr(std::span<const std::array<double, 3>> rows) {
    std::vector<Site> sites;
    sites.reserve(rows.size());
    for (const auto& row : rows) sites.push_back({0, row[0], row[1], row[2]});
    return SiteSet(std::move(sites));
}

SiteSet SiteSet::normalized() const {
    SiteSet out;
    if (sites_.empty()) return out;
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (const Site& s : sites_) {
        lo_x = std::min(lo_x, s.x - s.r);
        lo_y = std::min(lo_y, s.y - s.r);
        hi_x = std::max(hi_x, s.x + s.r);
        hi_y = std::max(hi_y, s.y + s.r);
    }
    const double side = std::max(hi_x - lo_x, hi_y - lo_y) * 1.01;
    Normalization n;
    n.scale = 1.0 / side;
    n.origin_x = 0.5 * (lo_x + hi_x) - 0.5 * side;
    n.origin_y = 0.5 * (lo_y + hi_y) - 0.5 * side;

    out.sites_.reserve(sites_.size());
    for (const Site& s : sites_) {
        const Point p = n.apply(s.center());
        out.sites_.push_back({s.id, p.x, p.y, s.r * n.scale});
    }
    validate(out.sites_);
    out.norm_ = n;
    return out;
}

SiteSet SiteSet::subset(std::span<const int> indices) const {
    SiteSet out;
    out.sites_.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        Site s = sites_.at(static_cast<std::size_t>(indices[i]));
        s.id = static_cast<int>(i);
        out.sites_.push_back(s);
    }
    out.norm_ = norm_;
    return out;
}

std::vector<int> SiteSet::order_by_radius() const {
    std::vector<int> order(sites_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [this](int a, int b) { return radius_less(sites_[a], sites_[b]); });
    return order;
}

namespace {

// Order-preserving map of a double to its top 32 key bits.
std::uint32_t coordinate_key(double v) {
    std::uint64_t b = 0;
    std::memcpy(&b, &v, sizeof b);
    b = (b >> 63) ? ~b : (b | (std::uint64_t{1} << 63));
    return static_cast<std::uint32_t>(b >> 32);
}

std::uint64_t spread_bits(std::uint32_t v) {
    std::uint64_t x = v;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
}

}  // namespace

std::vector<int> SiteSet::spatial_order() const {
    const std::size_t n = sites_.size();
    std::vector<std::uint64_t> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        key[i] = spread_bits(coordinate_key(sites_[i].x)) | (spread_bits(coordinate_key(sites_[i].y)) << 1);
    }
    if (std::is_sorted(key.begin(), key.end())) return {};
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b] || (key[a] == key[b] && a < b); });
    return order;
}

double dist(const Site& a, const Site& b) { return std::hypot(a.x - b.x, a.y - b.y); }
double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

// Sign of (ax - bx)^2 + (ay - by)^2 - rr^2 with rr = r1 + r2 (r2 may be 0).
int sign_gap(double ax, double ay, double bx, double by, double r1, double r2) {
    const double dx = ax - bx;
    const double dy = ay - by;
    const double rr = r1 + r2;
    const double d2 = dx * dx + dy * dy;
    const double r2sq = rr * rr;
    const double v = d2 - r2sq;
    const double bound = kFilter * (d2 + r2sq + std::abs(ax) + std::abs(bx) + std::abs(ay) + std::abs(by));
    if (v > bound) return 1;
    if (v < -bound) return -1;
    const Rational ex = Rational(ax) - Rational(bx);
    const Rational ey = Rational(ay) - Rational(by);
    const Rational er = Rational(r1) + Rational(r2);
    return sign_of(ex * ex + ey * ey - er * er);
}

}  // namespace

int sign_disk_gap(const Site& a, const Site& b) { return sign_gap(a.x, a.y, b.x, b.y, a.r, b.r); }
int sign_tx_gap(const Site& a, const Site& b) { return sign_gap(a.x, a.y, b.x, b.y, a.r, 0.0); }
int sign_point_in_disk(Point p, const Site& disk) { return sign_gap(p.x, p.y, disk.x, disk.y, disk.r, 0.0); }

bool disk_contains_disk(const Site& outer, const Site& inner) {
    if (inner.r > outer.r) return false;
    // |d| <= R - r  <=>  d^2 <= (R - r)^2 when R >= r.
    return sign_gap(outer.x, outer.y, inner.x, inner.y, outer.r, -inner.r) <= 0;
}

CirclePoints circle_circle_points(const Site& a, const Site& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    if (dx == 0.0 && dy == 0.0) {
        if (a.r == b.r) throw GeometryError("coincident circles");
        return {};
    }
    const int outer = sign_gap(a.x, a.y, b.x, b.y, a.r, b.r);
    const int inner = sign_gap(a.x, a.y, b.x, b.y, a.r, -b.r);
    if (outer > 0 || inner < 0) return {};

    const double d = std::hypot(dx, dy);
    const double ux = dx / d;
    const double uy = dy / d;
    const double along = (a.r * a.r - b.r * b.r + d * d) / (2.0 * d);
    const Point mid{a.x + along * ux, a.y + along * uy};
    if (outer == 0 || inner == 0) return {{mid, Point{}}, 1};

    const double h = std::sqrt(std::max(0.0, a.r * a.r - along * along));
    Point p{mid.x - h * uy, mid.y + h * ux};
    Point q{mid.x + h * uy, mid.y - h * ux};
    if (q.y < p.y || (q.y == p.y && q.x < p.x)) std::swap(p, q);
    return {{p, q}, 2};
}

int orient2d(Point a, Point b, Point c) {
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double det = l - r;
    const double bound = 3.4e-16 * (std::abs(l) + std::abs(r));
    if (det > bound) return 1;
    if (det < -bound) return -1;
    const Rational ax(a.x), ay(a.y);
    const Rational e = (Rational(b.x) - ax) * (Rational(c.y) - ay) - (Rational(b.y) - ay) * (Rational(c.x) - ax);
    return sign_of(e);
}

bool point_in_disk_tol(Point p, const Site& disk, double rel_tol) {
    return dist(p, disk.center()) <= disk.r * (1.0 + rel_tol) + rel_tol * (std::abs(p.x) + std::abs(p.y));
}

std::optional<Point> common_point(const Site& a, const Site& b, const Site& c, double rel_tol) {
    const std::array<const Site*, 3> d{&a, &b, &c};
    std::vector<Point> candidates;
    for (const Site* s : d) candidates.push_back({s->x - s->r, s->y});
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (d[i]->x == d[j]->x && d[i]->y == d[j]->y) continue;
            for (Point p : circle_circle_points(*d[i], *d[j])) candidates.push_back(p);
        }
    }
    for (Point p : candidates) {
        if (point_in_disk_tol(p, a, rel_tol) && point_in_disk_tol(p, b, rel_tol) && point_in_disk_tol(p, c, rel_tol)) {
            return p;
        }
    }
    return std::nullopt;
}

double perimeter(const Site& a, const Site& b, const Site& c) {
    std::array<const Site*, 3> v{&a, &b, &c};
    std::sort(v.begin(), v.end(), [](const Site* l, const Site* r) {
        return l->x < r->x || (l->x == r->x && l->y < r->y);
    });
    return dist(*v[0], *v[1]) + dist(*v[1], *v[2]) + dist(*v[0], *v[2]);
}

LiftedHalfspace lift_site(const Site& s) {
    return {2.0 * s.x, 2.0 * s.y, s.r * s.r - s.x * s.x - s.y * s.y};
}

LiftedPoint lift_point(Point p) { return {p.x, p.y, p.x * p.x + p.y * p.y}; }

}  // namespace geogirth

#include "geogirth/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include <absl/container/flat_hash_set.h>

#include "geogirth/diagnostics.hpp"

namespace geogirth {

ArcSegment make_arc(const Site& s, ArcHalf half) {
    return {s.id, half, {s.x - s.r, s.y}, {s.x + s.r, s.y}};
}

namespace {

constexpr int kNil = -1;

int arc_id(int site, ArcHalf half) { return 2 * site + (half == ArcHalf::Upper ? 1 : 0); }
int arc_site(int arc) { return arc / 2; }
ArcHalf arc_half(int arc) { return (arc & 1) ? ArcHalf::Upper : ArcHalf::Lower; }

double arc_y(const Site& s, ArcHalf half, double x) {
    const double dx = std::clamp(x - s.x, -s.r, s.r);
    const double h = std::sqrt(std::max(0.0, (s.r - dx) * (s.r + dx)));
    return half == ArcHalf::Upper ? s.y + h : s.y - h;
}

std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Ordered sequence of arcs along the sweepline. Positions are structural:
// nodes are placed by comparison at insertion time and crossing arcs trade
// places explicitly, so no comparator is ever re-evaluated on stale keys.
// Each subtree stores the sum of its arc weights (+1 lower, -1 upper); a
// prefix sum below a point is the number of disks containing it.
class ArcTreap {
public:
    explicit ArcTreap(std::size_t arcs) : nodes_(arcs), node_of_arc_(arcs, kNil), rng_(0x5eed) {}

    int node_of(int arc) const { return node_of_arc_[static_cast<std::size_t>(arc)]; }
    int arc_at(int node) const { return nodes_[node].arc; }

    template <typename Below>
    int insert(int arc, Below&& new_is_below) {
        const int x = alloc(arc);
        if (root_ == kNil) {
            root_ = x;
            return x;
        }
        int cur = root_;
        while (true) {
            const bool left = new_is_below(nodes_[cur].arc);
            int& child = left ? nodes_[cur].left : nodes_[cur].right;
            if (child == kNil) {
                child = x;
                nodes_[x].parent = cur;
                break;
            }
            cur = child;
        }
        settle(x);
        return x;
    }

    int insert_after(int arc, int pred) {
        const int x = alloc(arc);
        if (nodes_[pred].right == kNil) {
            nodes_[pred].right = x;
            nodes_[x].parent = pred;
        } else {
            int cur = nodes_[pred].right;
            while (nodes_[cur].left != kNil) cur = nodes_[cur].left;
            nodes_[cur].left = x;
            nodes_[x].parent = cur;
        }
        settle(x);
        return x;
    }

    void erase(int x) {
        while (nodes_[x].left != kNil || nodes_[x].right != kNil) {
            const int l = nodes_[x].left;
            const int r = nodes_[x].right;
            const int c = (l == kNil) ? r : (r == kNil ? l : (nodes_[l].prio > nodes_[r].prio ? l : r));
            rotate_up(c);
        }
        const int p = nodes_[x].parent;
        if (p == kNil) {
            root_ = kNil;
        } else {
            (nodes_[p].left == x ? nodes_[p].left : nodes_[p].right) = kNil;
            refresh_path(p);
        }
        node_of_arc_[static_cast<std::size_t>(nodes_[x].arc)] = kNil;
        nodes_[x] = Node{};
    }

    void swap_arcs(int na, int nb) {
        std::swap(nodes_[na].arc, nodes_[nb].arc);
        std::swap(nodes_[na].weight, nodes_[nb].weight);
        node_of_arc_[static_cast<std::size_t>(nodes_[na].arc)] = na;
        node_of_arc_[static_cast<std::size_t>(nodes_[nb].arc)] = nb;
        refresh_path(na);
        refresh_path(nb);
    }

    int next(int x) const {
        if (nodes_[x].right != kNil) {
            x = nodes_[x].right;
            while (nodes_[x].left != kNil) x = nodes_[x].left;
            return x;
        }
        int p = nodes_[x].parent;
        while (p != kNil && nodes_[p].right == x) {
            x = p;
            p = nodes_[p].parent;
        }
        return p;
    }

    int prev(int x) const {
        if (nodes_[x].left != kNil) {
            x = nodes_[x].left;
            while (nodes_[x].right != kNil) x = nodes_[x].right;
            return x;
        }
        int p = nodes_[x].parent;
        while (p != kNil && nodes_[p].left == x) {
            x = p;
            p = nodes_[p].parent;
        }
        return p;
    }

    /// Weight sum of arcs strictly below the point and the first node above
    /// it (kNil if none). `is_below(arc)` reports whether the arc passes
    /// below the point.
    template <typename IsBelow>
    std::pair<int, int> prefix(IsBelow&& is_below) const {
        int acc = 0;
        int above = kNil;
        int cur = root_;
        while (cur != kNil) {
            if (is_below(nodes_[cur].arc)) {
                acc += sum(nodes_[cur].left) + nodes_[cur].weight;
                cur = nodes_[cur].right;
            } else {
                above = cur;
                cur = nodes_[cur].left;
            }
        }
        return {acc, above};
    }

private:
    struct Node {
        int arc = kNil;
        int left = kNil;
        int right = kNil;
        int parent = kNil;
        std::uint64_t prio = 0;
        int weight = 0;
        int sum = 0;
    };

    int alloc(int arc) {
        const int x = arc;  // slot `arc` is free until this arc is inserted
        nodes_[x] = Node{};
        nodes_[x].arc = arc;
        nodes_[x].prio = rng_();
        nodes_[x].weight = arc_half(arc) == ArcHalf::Lower ? 1 : -1;
        nodes_[x].sum = nodes_[x].weight;
        node_of_arc_[static_cast<std::size_t>(arc)] = x;
        return x;
    }

    int sum(int x) const { return x == kNil ? 0 : nodes_[x].sum; }
    void update(int x) { nodes_[x].sum = nodes_[x].weight + sum(nodes_[x].left) + sum(nodes_[x].right); }

    void refresh_path(int x) {
        for (; x != kNil; x = nodes_[x].parent) update(x);
    }

    void rotate_up(int x) {
        const int p = nodes_[x].parent;
        const int g = nodes_[p].parent;
        if (nodes_[p].left == x) {
            nodes_[p].left = nodes_[x].right;
            if (nodes_[x].right != kNil) nodes_[nodes_[x].right].parent = p;
            nodes_[x].right = p;
        } else {
            nodes_[p].right = nodes_[x].left;
            if (nodes_[x].left != kNil) nodes_[nodes_[x].left].parent = p;
            nodes_[x].left = p;
        }
        nodes_[p].parent = x;
        nodes_[x].parent = g;
        if (g == kNil) {
            root_ = x;
        } else {
            (nodes_[g].left == p ? nodes_[g].left : nodes_[g].right) = x;
        }
        update(p);
        update(x);
    }

    void settle(int x) {
        while (nodes_[x].parent != kNil && nodes_[x].prio > nodes_[nodes_[x].parent].prio) rotate_up(x);
        refresh_path(x);
    }

    std::vector<Node> nodes_;
    std::vector<int> node_of_arc_;
    int root_ = kNil;
    std::mt19937_64 rng_;
};

struct CrossEvent {
    double x;
    double y;
    int lower_arc;
    int upper_arc;
    std::uint64_t key;
    bool tangent;
    Point p;

    bool operator>(const CrossEvent& o) const { return x > o.x || (x == o.x && (y > o.y || (y == o.y && key > o.key))); }
};

struct SweepConfig {
    std::size_t point_limit = std::numeric_limits<std::size_t>::max();
    std::size_t edge_limit = std::numeric_limits<std::size_t>::max();
    bool containment = false;
};

struct SweepRun {
    bool exceeded = false;
    std::vector<ArcIntersection> points;
    std::vector<Edge> edges;  // distinct, discovery order
    std::vector<Edge> nested;
};

class ArcSweep {
public:
    ArcSweep(const SiteSet& sites, SweepConfig cfg) : s_(sites), cfg_(cfg), treap_(2 * sites.size()) {
        reported_.reserve(8 * sites.size());
        seen_edges_.reserve(4 * sites.size());
    }

    SweepRun run() {
        const std::size_t n = s_.size();
        std::vector<int> ins(n), rem(n);
        std::iota(ins.begin(), ins.end(), 0);
        std::iota(rem.begin(), rem.end(), 0);
        std::sort(ins.begin(), ins.end(), [&](int a, int b) {
            const double xa = s_[a].x - s_[a].r, xb = s_[b].x - s_[b].r;
            return xa < xb || (xa == xb && (s_[a].y < s_[b].y || (s_[a].y == s_[b].y && a < b)));
        });
        std::sort(rem.begin(), rem.end(), [&](int a, int b) {
            const double xa = s_[a].x + s_[a].r, xb = s_[b].x + s_[b].r;
            return xa < xb || (xa == xb && (s_[a].y < s_[b].y || (s_[a].y == s_[b].y && a < b)));
        });

        std::size_t ii = 0, ri = 0;
        const double inf = std::numeric_limits<double>::infinity();
        while (!done_ && (ii < n || ri < n)) {
            const double xi = ii < n ? s_[ins[ii]].x - s_[ins[ii]].r : inf;
            const double xc = events_.empty() ? inf : events_.top().x;
            const double xr = ri < n ? s_[rem[ri]].x + s_[rem[ri]].r : inf;
            if (xi <= xc && xi <= xr) {
                insert_site(ins[ii++]);
            } else if (xc <= xr) {
                const CrossEvent ev = events_.top();
                events_.pop();
                handle_cross(ev);
            } else {
                remove_site(rem[ri++]);
            }
        }
        return std::move(out_);
    }

private:
    const Site& owner(int arc) const { return s_[static_cast<std::size_t>(arc_site(arc))]; }
    double y_of(int arc, double x) const { return arc_y(owner(arc), arc_half(arc), x); }

    void add_edge(int a, int b, bool nested) {
        if (!seen_edges_.insert(pair_key(a, b)).second) return;
        const Edge e{std::min(a, b), std::max(a, b)};
        out_.edges.push_back(e);
        if (nested) out_.nested.push_back(e);
        if (out_.edges.size() > cfg_.edge_limit) {
            out_.exceeded = true;
            done_ = true;
        }
    }

    void insert_site(int t) {
        const Site& st = s_[static_cast<std::size_t>(t)];
        const double x0 = st.x - st.r;
        cur_x_ = std::max(cur_x_, x0);
        const Point p{x0, st.y};

        if (cfg_.containment) find_containers(st, p);
        if (done_) return;

        const int lo_arc = arc_id(t, ArcHalf::Lower);
        const double probe = x0 + 1e-7 * st.r;
        const int lo = treap_.insert(lo_arc, [&](int other) {
            const double yo = y_of(other, x0);
            if (yo != p.y) return p.y < yo;
            return arc_y(st, ArcHalf::Lower, probe) < y_of(other, probe);
        });
        const int up = treap_.insert_after(arc_id(t, ArcHalf::Upper), lo);
        check_pair(treap_.prev(lo), lo);
        check_pair(up, treap_.next(up));
    }

    // Walks upward from p through the arcs above it until every disk that
    // contains p has been met; the count comes from the weight prefix sum.
    void find_containers(const Site& t, Point p) {
        const auto [depth, above] = treap_.prefix([&](int arc) { return y_of(arc, p.x) < p.y; });
        int found = 0;
        for (int node = above; node != kNil && found < depth; node = treap_.next(node)) {
            const int arc = treap_.arc_at(node);
            if (arc_half(arc) != ArcHalf::Upper) continue;
            const Site& s = owner(arc);
            if (!point_in_disk(p, s)) continue;
            ++found;
            if (disk_contains_disk(s, t)) {
                add_edge(s.id, t.id, true);
                if (done_) return;
            }
        }
    }

    void remove_site(int t) {
        const Site& st = s_[static_cast<std::size_t>(t)];
        cur_x_ = std::max(cur_x_, st.x + st.r);
        for (ArcHalf h : {ArcHalf::Lower, ArcHalf::Upper}) {
            const int node = treap_.node_of(arc_id(t, h));
            const int before = treap_.prev(node);
            const int after = treap_.next(node);
            treap_.erase(node);
            if (before != kNil && after != kNil) check_pair(before, after);
        }
    }

    void handle_cross(const CrossEvent& ev) {
        if (reported_.contains(ev.key)) return;
        const int na = treap_.node_of(ev.lower_arc);
        const int nb = treap_.node_of(ev.upper_arc);
        if (na == kNil || nb == kNil) return;
        int lower = kNil, upper = kNil;
        if (treap_.next(na) == nb) {
            lower = na;
            upper = nb;
        } else if (treap_.next(nb) == na) {
            lower = nb;
            upper = na;
        } else {
            return;  // no longer adjacent; rescheduled when they meet again
        }
        reported_.insert(ev.key);
        cur_x_ = std::max(cur_x_, ev.x);
        const int a = arc_site(ev.lower_arc), b = arc_site(ev.upper_arc);
        out_.points.push_back({std::min(a, b), std::max(a, b), ev.p});
        if (out_.points.size() > cfg_.point_limit) {
            out_.exceeded = true;
            done_ = true;
            return;
        }
        add_edge(a, b, false);
        if (done_) return;
        if (!ev.tangent) treap_.swap_arcs(lower, upper);
        check_pair(treap_.prev(lower), lower);
        check_pair(upper, treap_.next(upper));
    }

    static bool on_half(Point q, const Site& s, ArcHalf h) {
        const double slack = 1e-9 * s.r;
        if (h == ArcHalf::Upper) return q.y >= s.y - slack;
        return q.y <= s.y + slack;
    }

    void check_pair(int lower_node, int upper_node) {
        if (lower_node == kNil || upper_node == kNil) return;
        const int la = treap_.arc_at(lower_node);
        const int ua = treap_.arc_at(upper_node);
        const int sa = arc_site(la), sb = arc_site(ua);
        if (sa == sb) return;
        const Site& A = s_[static_cast<std::size_t>(sa)];
        const Site& B = s_[static_cast<std::size_t>(sb)];
        const CirclePoints pts = circle_circle_points(A, B);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Point q = pts[k];
            if (!on_half(q, A, arc_half(la)) || !on_half(q, B, arc_half(ua))) continue;
            const std::uint64_t key = pair_key(sa, sb) * 2 + k;
            if (reported_.contains(key)) continue;
            events_.push({std::max(q.x, cur_x_), q.y, la, ua, key, pts.size() == 1, q});
        }
    }

    const SiteSet& s_;
    SweepConfig cfg_;
    ArcTreap treap_;
    std::priority_queue<CrossEvent, std::vector<CrossEvent>, std::greater<>> events_;
    absl::flat_hash_set<std::uint64_t> reported_;
    absl::flat_hash_set<std::uint64_t> seen_edges_;
    SweepRun out_;
    double cur_x_ = -std::numeric_limits<double>::infinity();
    bool done_ = false;
};

}  // namespace

ArcSweepResult arc_intersections_bounded(const SiteSet& sites, std::size_t limit) {
    SweepConfig cfg;
    cfg.point_limit = limit;
    SweepRun run = ArcSweep(sites, cfg).run();
    return {run.exceeded, std::move(run.points)};
}

std::vector<Edge> containment_edges(const SiteSet& sites) {
    SweepConfig cfg;
    cfg.containment = true;
    SweepRun run = ArcSweep(sites, cfg).run();
    return std::move(run.nested);
}

bool segments_cross(const SiteSet& sites, Edge e, Edge f) {
    if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) return false;
    const Point a = sites[e.u].center(), b = sites[e.v].center();
    const Point c = sites[f.u].center(), d = sites[f.v].center();
    const int o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
    if (o1 == 0 || o2 == 0 || o1 == o2) return false;
    const int o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
    return o3 != 0 && o4 != 0 && o3 != o4;
}

namespace {

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Shamos-Hoey: the status order stays valid until the first crossing, which
// is always between two segments adjacent at some event.
class SegmentSweep {
public:
    SegmentSweep(const SiteSet& sites, std::span<const Edge> edges) : sites_(sites), edges_(edges) {
        for (const Edge& e : edges) {
            Point a = sites[e.u].center(), b = sites[e.v].center();
            if (lex_less(b, a)) std::swap(a, b);
            lo_.push_back(a);
            hi_.push_back(b);
        }
    }

    std::optional<std::pair<Edge, Edge>> run() {
        struct Ev {
            Point p;
            int seg;
            bool start;
        };
        std::vector<Ev> evs;
        evs.reserve(2 * edges_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            evs.push_back({lo_[i], static_cast<int>(i), true});
            evs.push_back({hi_[i], static_cast<int>(i), false});
        }
        // Per point: removals before insertions.
        std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
            if (a.p.x != b.p.x) return a.p.x < b.p.x;
            if (a.p.y != b.p.y) return a.p.y < b.p.y;
            if (a.start != b.start) return !a.start;
            return a.seg < b.seg;
        });

        std::set<int, Cmp> status(Cmp{this});
        std::vector<std::set<int, Cmp>::iterator> where(edges_.size(), status.end());
        for (const Ev& ev : evs) {
            x_ = ev.p.x;
            y_ = ev.p.y;
            if (ev.start) {
                const auto it = status.insert(ev.seg).first;
                where[static_cast<std::size_t>(ev.seg)] = it;
                if (it != status.begin()) {
                    if (auto hit = test(*std::prev(it), *it)) return hit;
                }
                if (std::next(it) != status.end()) {
                    if (auto hit = test(*it, *std::next(it))) return hit;
                }
            } else {
                const auto it = where[static_cast<std::size_t>(ev.seg)];
                const auto nx = std::next(it);
                if (it != status.begin() && nx != status.end()) {
                    if (auto hit = test(*std::prev(it), *nx)) return hit;
                }
                status.erase(it);
            }
        }
        return std::nullopt;
    }

private:
    struct Cmp {
        const SegmentSweep* sw;
        bool operator()(int i, int j) const { return sw->below(i, j); }
    };

    double y_at(int i) const {
        const Point a = lo_[static_cast<std::size_t>(i)], b = hi_[static_cast<std::size_t>(i)];
        if (a.x == b.x) return std::clamp(y_, a.y, b.y);
        if (x_ <= a.x) return a.y;
        if (x_ >= b.x) return b.y;
        return a.y + (x_ - a.x) * (b.y - a.y) / (b.x - a.x);
    }

    double slope(int i) const {
        const Point a = lo_[static_cast<std::size_t>(i)], b = hi_[static_cast<std::size_t>(i)];
        if (a.x == b.x) return std::numeric_limits<double>::infinity();
        return (b.y - a.y) / (b.x - a.x);
    }

    bool below(int i, int j) const {
        if (i == j) return false;
        const double yi = y_at(i), yj = y_at(j);
        if (yi != yj) return yi < yj;
        const double si = slope(i), sj = slope(j);
        if (si != sj) return si < sj;
        return i < j;
    }

    std::optional<std::pair<Edge, Edge>> test(int i, int j) const {
        const Edge e = edges_[static_cast<std::size_t>(i)], f = edges_[static_cast<std::size_t>(j)];
        if (segments_cross(sites_, e, f)) return std::make_pair(e, f);
        return std::nullopt;
    }

    const SiteSet& sites_;
    std::span<const Edge> edges_;
    std::vector<Point> lo_, hi_;
    double x_ = 0.0, y_ = 0.0;
};

}  // namespace

std::optional<std::pair<Edge, Edge>> find_segment_crossing(const SiteSet& sites, std::span<const Edge> edges) {
    return SegmentSweep(sites, edges).run();
}

std::optional<std::pair<Edge, Edge>> brute_segment_crossing(const SiteSet& sites, std::span<const Edge> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (segments_cross(sites, edges[i], edges[j])) return std::make_pair(edges[i], edges[j]);
        }
    }
    return std::nullopt;
}

namespace {

Point lerp(Point a, Point b, double t) { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }

bool holds(Point p, const Site& a, const Site& b, const Site& c) {
    constexpr double tol = 1e-9;
    return point_in_disk_tol(p, a, tol) && point_in_disk_tol(p, b, tol) && point_in_disk_tol(p, c, tol);
}

// Point of segment p -> q (q the center of `disk`) where it first enters the
// disk; p itself when already inside.
Point entry_point(Point p, const Site& disk) {
    const double d = dist(p, disk.center());
    if (d <= disk.r) return p;
    return lerp(p, disk.center(), (d - disk.r) / d);
}

}  // namespace

CrossingTriangle triangle_from_crossing(const SiteSet& sites, int s, int t, int u, int v) {
    const std::array<int, 4> ids{s, t, u, v};
    for (int i = 0; i < 4; ++i) {
        if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= sites.size()) {
            throw std::invalid_argument("triangle_from_crossing: site id out of range");
        }
        for (int j = i + 1; j < 4; ++j) {
            if (ids[i] == ids[j]) throw std::invalid_argument("triangle_from_crossing: sites must be distinct");
        }
    }
    if (!disk_edge(sites[s], sites[t]) || !disk_edge(sites[u], sites[v])) {
        throw std::invalid_argument("triangle_from_crossing: inputs are not disk-graph edges");
    }
    if (!segments_cross(sites, {s, t}, {u, v})) {
        throw std::invalid_argument("triangle_from_crossing: segments do not cross");
    }

    const Point ps = sites[s].center(), pt = sites[t].center();
    const Point pu = sites[u].center(), pv = sites[v].center();
    const double rx = pt.x - ps.x, ry = pt.y - ps.y;
    const double qx = pv.x - pu.x, qy = pv.y - pu.y;
    const double lambda = ((pu.x - ps.x) * qy - (pu.y - ps.y) * qx) / (rx * qy - ry * qx);
    const Point a = lerp(ps, pt, std::clamp(lambda, 0.0, 1.0));

    // The crossing point lies on both segments, so it is covered by one disk
    // of each edge. Name them so that a is in D_p and D_q with r_q <= r_p.
    auto closer = [&](int x, int y) {
        const double ex = dist(a, sites[x].center()) / sites[x].r;
        const double ey = dist(a, sites[y].center()) / sites[y].r;
        return ex <= ey ? std::make_pair(x, y) : std::make_pair(y, x);
    };
    auto [p, p2] = closer(s, t);
    auto [q, q2] = closer(u, v);
    if (sites[q].r > sites[p].r) {
        std::swap(p, q);
        std::swap(p2, q2);
    }
    const Site& P = sites[p];
    const Site& P2 = sites[p2];
    const Site& Q = sites[q];
    const Site& Q2 = sites[q2];

    std::optional<CrossingTriangle> out;
    if (point_in_disk(a, P2)) {
        out = CrossingTriangle{make_triangle(sites, p, p2, q), a};
    } else {
        const double len = dist(P, P2);
        const Point b = lerp(P.center(), P2.center(), std::max(0.0, len - P2.r) / len);
        if (point_in_disk(b, Q)) {
            out = CrossingTriangle{make_triangle(sites, p, p2, q), b};
        } else {
            const Point c = entry_point(a, Q2);
            out = CrossingTriangle{make_triangle(sites, p, q, q2), c};
        }
    }
    const Triangle& tri = out->triangle;
    if (holds(out->common, sites[tri.v[0]], sites[tri.v[1]], sites[tri.v[2]])) return *out;

    // Numerical safety net: the case analysis guarantees one of the four
    // triples has a common point, so search them directly.
    const std::array<std::array<int, 3>, 4> triples{{{s, t, u}, {s, t, v}, {s, u, v}, {t, u, v}}};
    for (const auto& tr : triples) {
        if (auto cp = common_point(sites[tr[0]], sites[tr[1]], sites[tr[2]])) {
            return {make_triangle(sites, tr[0], tr[1], tr[2]), *cp};
        }
    }
    throw std::logic_error("triangle_from_crossing: no triple shares a point");
}

SweepOutcome build_plane_or_witness(const SiteSet& sites) {
    const std::size_t n = sites.size();
    SweepOutcome out;
    if (n <= 3) {
        out.graph = build_disk_graph_brute(sites);
        return out;
    }
    SweepConfig cfg;
    cfg.point_limit = 6 * n - 12;
    cfg.edge_limit = 3 * n - 6;
    cfg.containment = true;
    SweepRun run = ArcSweep(sites, cfg).run();

    StructuralStats& stats = structural_stats();
    ++stats.planar_cutoff_checks;
    const auto crossing = find_segment_crossing(sites, run.edges);
    if (crossing) {
        const auto [e, f] = *crossing;
        out.plane = false;
        out.witness = triangle_from_crossing(sites, e.u, e.v, f.u, f.v).triangle;
        return out;
    }
    if (run.exceeded || run.edges.size() > 3 * n - 6 || run.points.size() > 6 * n - 12) {
        ++stats.planar_cutoff_violations;
        throw std::logic_error("build_plane_or_witness: more than 3n-6 edges but no crossing found");
    }
    out.graph = UndirectedGraph::from_edges(sites, run.edges);
    return out;
}

}  // namespace geogirth

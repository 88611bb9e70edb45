#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "geogirth/geometry.hpp"
#include "geogirth/instance_io.hpp"
#include "support/testkit.hpp"

namespace geogirth {
namespace {

using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;
using testkit::sites;

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Rational sq_dist(const Site& a, const Site& b) {
    const Rational dx = Rational(a.x) - Rational(b.x);
    const Rational dy = Rational(a.y) - Rational(b.y);
    return dx * dx + dy * dy;
}

// Pairs biased toward the boundary: every other sample places b at distance
// ra + rb (or ra) up to one rounding, where the double filter is useless.
std::pair<Site, Site> boundary_pair(std::mt19937_64& rng, bool tx) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Site a{0, u(rng), u(rng), 0.05 + std::abs(u(rng))};
    Site b{1, u(rng), u(rng), 0.05 + std::abs(u(rng))};
    if (rng() % 2 == 0) {
        const double ang = 3.0 * u(rng);
        const double d = tx ? a.r : a.r + b.r;
        b.x = a.x + d * std::cos(ang);
        b.y = a.y + d * std::sin(ang);
    }
    return {a, b};
}

TEST(Dist, TrivialExamples) {
    EXPECT_EQ(dist(Point{0, 0}, Point{0, 0}), 0.0);
    EXPECT_EQ(dist(Point{0, 0}, Point{3, 4}), 5.0);
}

TEST(Dist, MatchesFiftyDigitEvaluation) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 20000; ++i) {
        const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
        const Float50 dx = Float50(a.x) - Float50(b.x), dy = Float50(a.y) - Float50(b.y);
        const Float50 exact = sqrt(dx * dx + dy * dy);
        const double got = dist(a, b);
        EXPECT_LE(abs(Float50(got) - exact) / exact, Float50(std::ldexp(1.0, -50)));
        EXPECT_EQ(got, dist(b, a));
    }
}

TEST(DiskEdge, Examples) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {3, 0, 1}});
    EXPECT_TRUE(disk_edge(s[0], s[1]));
    EXPECT_FALSE(disk_edge(s[0], s[2]));
}

TEST(DiskEdge, AgreesWithRationalSign) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200000; ++i) {
        const auto [a, b] = boundary_pair(rng, false);
        const Rational rs = Rational(a.r) + Rational(b.r);
        ASSERT_EQ(sign_disk_gap(a, b), sign_of(sq_dist(a, b) - rs * rs)) << i;
    }
}

TEST(TxEdge, Examples) {
    const Site a{0, 0, 0, 2}, b{1, 1, 0, 3};
    EXPECT_TRUE(tx_edge(a, b));
    EXPECT_TRUE(tx_edge(b, a));
    const Site small{1, 1, 0, 0.5};
    EXPECT_FALSE(tx_edge(small, a));
}

TEST(TxEdge, AgreesWithRationalSign) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200000; ++i) {
        const auto [a, b] = boundary_pair(rng, true);
        const Rational ra = Rational(a.r);
        ASSERT_EQ(sign_tx_gap(a, b), sign_of(sq_dist(a, b) - ra * ra)) << i;
    }
}

TEST(CircleCircle, TangentAndLens) {
    const SiteSet s = sites({{0, 0, 1}, {2, 0, 1}, {1, 0, 1}});
    const CirclePoints tangent = circle_circle_points(s[0], s[1]);
    ASSERT_EQ(tangent.size(), 1u);
    EXPECT_DOUBLE_EQ(tangent[0].x, 1.0);
    EXPECT_NEAR(tangent[0].y, 0.0, 1e-15);

    const CirclePoints lens = circle_circle_points(s[0], s[2]);
    ASSERT_EQ(lens.size(), 2u);
    EXPECT_NEAR(lens[0].x, 0.5, 1e-15);
    EXPECT_NEAR(lens[0].y, -std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(lens[1].y, std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(CircleCircle, DisjointNestedAndCoincident) {
    const Site a{0, 0, 0, 1}, far{1, 5, 0, 1}, inner{2, 0.1, 0, 0.2}, same{3, 0, 0, 1};
    EXPECT_TRUE(circle_circle_points(a, far).empty());
    EXPECT_TRUE(circle_circle_points(a, inner).empty());
    EXPECT_THROW(circle_circle_points(a, same), GeometryError);
}

TEST(CircleCircle, ResidualsAreTiny) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const Site a{0, u(rng), u(rng), 0.1 + u(rng)}, b{1, u(rng), u(rng), 0.1 + u(rng)};
        for (const Point& p : circle_circle_points(a, b)) {
            EXPECT_LE(std::abs(dist(p, a.center()) - a.r), 1e-12);
            EXPECT_LE(std::abs(dist(p, b.center()) - b.r), 1e-12);
            ++checked;
        }
    }
    EXPECT_GT(checked, 10000);
}

TEST(Lifting, HalfspaceCoefficients) {
    const Site s{0, 0.5, -2.0, 3.0};
    const LiftedHalfspace h = lift_site(s);
    EXPECT_EQ(h.a, 1.0);
    EXPECT_EQ(h.b, -4.0);
    EXPECT_EQ(h.c, -0.25 - 4.0 + 9.0);
    const LiftedPoint p = lift_point({3.0, 4.0});
    EXPECT_EQ(p.z, 25.0);
}

// The lifted test z <= a x + b y + c is algebraically |p - s|^2 <= r^2. The
// rational check below evaluates the lifted form exactly from the exact
// lifted coefficients; the double check compares away from the boundary.
TEST(Lifting, EquivalentToDiskMembership) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100000; ++i) {
        const Site s{0, u(rng), u(rng), 0.1 + std::abs(u(rng))};
        const Point p{u(rng), u(rng)};
        const Rational px(p.x), py(p.y), sx(s.x), sy(s.y), r(s.r);
        const Rational lifted = px * px + py * py - (2 * sx * px + 2 * sy * py - sx * sx - sy * sy + r * r);
        const Rational direct = (px - sx) * (px - sx) + (py - sy) * (py - sy) - r * r;
        ASSERT_EQ(lifted, direct);
        ASSERT_EQ(sign_point_in_disk(p, s), sign_of(direct));
        const double margin = std::abs(direct.convert_to<double>());
        if (margin > 1e-9) {
            EXPECT_EQ(violates(lift_point(p), lift_site(s)), point_in_disk(p, s)) << i;
        }
    }
}

TEST(Perimeter, IndependentOfArgumentOrder) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {0.75, 1, 1}});
    const double p = perimeter(s[0], s[1], s[2]);
    EXPECT_DOUBLE_EQ(p, 4.0);
    EXPECT_EQ(p, perimeter(s[2], s[0], s[1]));
    EXPECT_EQ(p, perimeter(s[1], s[2], s[0]));
}

TEST(CommonPoint, FindsSharedPointOrNone) {
    const SiteSet s = sites({{0, 0, 1}, {1.5, 0, 1}, {0.75, 1, 1}, {10, 10, 1}});
    const auto p = common_point(s[0], s[1], s[2]);
    ASSERT_TRUE(p.has_value());
    for (int i = 0; i < 3; ++i) { EXPECT_TRUE(point_in_disk_tol(*p, s[static_cast<std::size_t>(i)], 1e-9)); }
    EXPECT_FALSE(common_point(s[0], s[1], s[3]).has_value());
}

TEST(SiteSet, Validation) {
    EXPECT_THROW(sites({{0, 0, 0}}), GeometryError);
    EXPECT_THROW(sites({{0, 0, -1}}), GeometryError);
    EXPECT_THROW(sites({{0, 0, 1}, {0, 0, 2}}), GeometryError);
    EXPECT_THROW(sites({{NAN, 0, 1}}), GeometryError);
    const SiteSet s = sites({{5, 5, 1}, {6, 5, 2}});
    EXPECT_EQ(s[1].id, 1);
}

TEST(SiteSet, NormalizationIsInvertibleAndPreservesEdges) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SiteSet s = testkit::random_instance(seed, 2, 60);
        const SiteSet t = s.normalized();
        ASSERT_EQ(s.size(), t.size());
        const Normalization& nz = t.normalization();
        for (std::size_t i = 0; i < s.size(); ++i) {
            EXPECT_GT(t[i].x, 0.0);
            EXPECT_LT(t[i].x, 1.0);
            EXPECT_GT(t[i].y, 0.0);
            EXPECT_LT(t[i].y, 1.0);
            EXPECT_LE(t[i].r, std::sqrt(2.0));
            const Point back = nz.invert(t[i].center());
            EXPECT_NEAR(back.x, s[i].x, 1e-12);
            EXPECT_NEAR(back.y, s[i].y, 1e-12);
            EXPECT_NEAR(nz.to_original_length(t[i].r), s[i].r, 1e-12);
        }
        // Scaling by a power of two would be exact; in general only pairs
        // clear of the boundary are guaranteed to keep their adjacency.
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const double gap = dist(s[i], s[j]) - s[i].r - s[j].r;
                if (std::abs(gap) > 1e-9) { EXPECT_EQ(disk_edge(s[i], s[j]), disk_edge(t[i], t[j])); }
            }
        }
    }
}

TEST(SiteSet, SpatialOrderIsAPermutationAndIdempotent) {
    const SiteSet s = testkit::random_instance(11, 300, 300);
    const std::vector<int> order = s.spatial_order();
    ASSERT_EQ(order.size(), s.size());
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) { EXPECT_EQ(sorted[i], static_cast<int>(i)); }
    EXPECT_TRUE(s.subset(order).spatial_order().empty());
}

TEST(RadiusOrder, TieRuleUsesIds) {
    const SiteSet s = sites({{0, 0, 2}, {5, 0, 1}, {9, 0, 2}});
    EXPECT_EQ(s.order_by_radius(), (std::vector<int>{1, 0, 2}));
    EXPECT_TRUE(radius_less(s[0], s[2]));
    EXPECT_FALSE(radius_less(s[2], s[0]));
}

TEST(InstanceIo, RoundTripIsByteIdentical) {
    const SiteSet s = testkit::random_instance(3, 40, 40);
    std::ostringstream first;
    write_instance(first, s);
    std::istringstream in(first.str());
    const SiteSet back = read_instance(in);
    std::ostringstream second;
    write_instance(second, back);
    EXPECT_EQ(first.str(), second.str());
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(s[i].x, back[i].x);
        EXPECT_EQ(s[i].r, back[i].r);
    }
}

TEST(InstanceIo, ReportsLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_instance(in);
        } catch (const InstanceParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("2\n0 0 1\n1 1\n"), 3u);
    EXPECT_EQ(line_of("x\n"), 1u);
    EXPECT_EQ(line_of("1\n0 0 1 extra\n"), 2u);

    std::istringstream truncated("3\n0 0 1\n1 1 1\n");
    EXPECT_THROW(read_instance(truncated), InstanceParseError);

    std::istringstream bad_radius("2\n0 0 1\n1 1 0\n");
    EXPECT_THROW(read_instance(bad_radius), GeometryError);
    std::istringstream trailing("1\n0 0 1\n\n\n");
    EXPECT_EQ(read_instance(trailing).size(), 1u);
}

}  // namespace
}  // namespace geogirth

#include <gtest/gtest.h>

#include "collinear/geometry.hpp"
#include "support.hpp"

using namespace collinear;
using testing_support::Gen;

namespace {

void expect_near(Complex a, Complex b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

/// A parameter with |c|^2 + 2|Re c| = n up to rounding.
Complex critical_parameter(double x, int n) { return {x, std::sqrt(n - x * x - 2 * std::abs(x))}; }

}  // namespace

TEST(RegionX, Examples) {
    for (int n = 2; n <= 30; ++n) {
        const Complex top(0.0, std::sqrt(2.0 * n - 1));
        EXPECT_TRUE(in_X(top, n)) << n;
        EXPECT_FALSE(in_X_interior(top, n, 1e-6)) << n;
        EXPECT_FALSE(in_X(Complex(0, 0.5), n));
        EXPECT_FALSE(in_X(Complex(1.5, 0), n));
    }
    EXPECT_TRUE(in_X(Complex(1, 2), 8));
    EXPECT_TRUE(in_X_interior(Complex(1, 1), 3, 1e-3));
    EXPECT_FALSE(in_X_interior(Complex(0, 0.5), 3, 0.0));
    EXPECT_THROW(in_X_interior(Complex(1, 1), 3, -1.0), DomainError);
}

TEST(RegionX, InsideTheDiskOfRadiusSqrt2nMinus1) {
    Gen g(1);
    for (int trial = 0; trial < 20000; ++trial) {
        const int n = g.integer(2, 40);
        const double r = std::sqrt(2.0 * n) + 1.0;
        const Complex c(g.uniform(-r, r), g.uniform(-r, r));
        if (in_X(c, n)) {
            EXPECT_LE(std::abs(c), std::sqrt(2.0 * n - 1) * (1 + 1e-12)) << c << " " << n;
        }
    }
}

TEST(RegionX, ContainsOuterDiskFromThreshold) {
    Gen g(2);
    for (int n = 21; n <= 80; ++n)
        for (int trial = 0; trial < 200; ++trial) {
            const Complex c = g.off_axis(1.0, 1.0 + std::sqrt(n - 1.0), 1e-9);
            EXPECT_TRUE(in_X(c, n)) << c << " " << n;
        }
}

TEST(CoverRect, VertexExamples) {
    for (int n = 2; n <= 6; ++n) {
        expect_near(cover_vertex(ParameterPoint(2.0, 0.0), n), {2.0 * (n + 1) / 3.0, 0.0}, 1e-15);
        const auto r = cover_rect(ParameterPoint(2.0, 0.0), n);
        EXPECT_TRUE(r.degenerate);
        EXPECT_EQ(r.half_height, 0.0);
    }
    const auto rect = cover_rect(ParameterPoint(0.7, 1.5), 5);
    const auto v = rect.vertices();
    EXPECT_EQ(v[1], std::conj(v[0]));
    EXPECT_EQ(v[2], -v[0]);
    EXPECT_GT(rect.half_width, 0);
    EXPECT_GT(rect.half_height, 0);
    for (auto z : v) EXPECT_TRUE(rect.contains(z));
}

TEST(CoverRect, BranchesAgreeOnImaginaryAxis) {
    for (double y : {1.1, 2.0, 5.0})
        for (int n = 2; n <= 9; ++n) {
            const Complex c(0.0, y);
            const Complex plus = c * (n + 1.0) / (1.0 + c);
            const Complex minus = c * (n + 1.0) / (1.0 - c);
            EXPECT_NEAR(std::abs(plus.real()), std::abs(minus.real()), 1e-12 * n);
            EXPECT_NEAR(std::abs(plus.imag()), std::abs(minus.imag()), 1e-12 * n);
            const auto r = cover_rect(ParameterPoint(c), n);
            EXPECT_NEAR(r.half_width, std::abs(minus.real()), 1e-12 * n);
            // nearby parameters on either side of the axis
            const auto left = cover_rect(ParameterPoint(-1e-9, y), n);
            const auto right = cover_rect(ParameterPoint(1e-9, y), n);
            EXPECT_NEAR(left.half_width, right.half_width, 1e-7 * n);
            EXPECT_NEAR(left.half_height, right.half_height, 1e-7 * n);
        }
}

TEST(CoverRect, SymmetricUnderConjugationAndNegation) {
    Gen g(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = g.integer(2, 9);
        const Complex c = g.off_axis(1.01, 4.0, 0.01);
        const auto r = cover_rect(ParameterPoint(c), n);
        for (Complex d : {std::conj(c), -c, -std::conj(c)}) {
            const auto m = cover_rect(ParameterPoint(d), n);
            EXPECT_NEAR(m.half_width, r.half_width, 1e-12 * n);
            EXPECT_NEAR(m.half_height, r.half_height, 1e-12 * n);
        }
    }
}

TEST(Covering, PredicateExamples) {
    const ParameterPoint critical_c(0.943906, 1.49038);
    EXPECT_EQ(covering_predicate(critical_c, 5), Covering::Critical);
    EXPECT_NEAR(covering_parameter(critical_c.value()), 5.0, 1e-4);
    EXPECT_EQ(covering_predicate(ParameterPoint(1, 2), 5), Covering::Disjoint);
    EXPECT_DOUBLE_EQ(covering_parameter(Complex(1, 2)), 7.0);
    EXPECT_EQ(covering_predicate(ParameterPoint(0.7, 1.5), 5), Covering::Covers);
    EXPECT_NEAR(covering_parameter(Complex(0.7, 1.5)), 4.14, 1e-12);
    EXPECT_EQ(covering_predicate(ParameterPoint(0, 1.1), 2), Covering::Covers);
    EXPECT_THROW(covering_predicate(ParameterPoint(2, 0), 3), DomainError);
}

TEST(Covering, GeometryExamples) {
    EXPECT_TRUE(covering_check_geometric(ParameterPoint(0.7, 1.5), 5, 128));
    EXPECT_FALSE(covering_check_geometric(ParameterPoint(1, 2), 5, 64));
    EXPECT_TRUE(covering_check_geometric(ParameterPoint(0, 1.1), 2, 128));
    EXPECT_THROW(covering_check_geometric(ParameterPoint(0, 1.1), 2, 1), DomainError);
}

TEST(Covering, GeometryAgreesWithPredicateAwayFromTheBand) {
    Gen g(4);
    int checked = 0;
    while (checked < 150) {
        const int n = g.integer(2, 9);
        const Complex c = g.off_axis(1.0, 4.0, 0.05);
        if (std::abs(c) <= 1.0) continue;
        const double s = covering_parameter(c);
        if (std::abs(s - n) <= 0.05) continue;
        ++checked;
        const ParameterPoint p(c);
        EXPECT_EQ(covering_check_geometric(p, n, 128), covering_predicate(p, n) == Covering::Covers)
            << c << " n=" << n << " s=" << s;
    }
}

TEST(Covering, CriticalParametersCoverTangentially) {
    for (int n = 2; n <= 9; ++n)
        for (double x : {0.0, 0.2, 0.5}) {
            const Complex c = critical_parameter(x, n);
            if (!(std::abs(c) > 1.0) || c.imag() == 0.0) continue;
            const ParameterPoint p(c);
            EXPECT_EQ(covering_predicate(p, n, 1e-9), Covering::Critical) << c;
            EXPECT_TRUE(covering_check_geometric(p, n, 128, 1e-9)) << c << " n=" << n;
            EXPECT_TRUE(covering_check_geometric(ParameterPoint(-std::conj(c)), n, 128, 1e-9));
        }
}

TEST(Covering, ThreadsDoNotChangeTheCount) {
    const auto rect = cover_rect(ParameterPoint(1.3, 1.9), 4);
    EXPECT_EQ(uncovered_samples(rect, 96, 0.0, 1), uncovered_samples(rect, 96, 0.0, 3));
    EXPECT_GT(uncovered_samples(rect, 96), 0u);
}

TEST(Bounds, Examples) {
    EXPECT_TRUE(bounds(Complex(1.5, 0), 2).antenna);
    EXPECT_FALSE(bounds(Complex(1.5, 0), 2).outside_outer);
    EXPECT_TRUE(bounds(Complex(0, 3.8), 8).outside_outer);
    EXPECT_FALSE(bounds(Complex(0, 3.8), 8).in_annulus);
    EXPECT_TRUE(bounds(Complex(0, std::sqrt(8.0) * 0.99), 8).in_annulus);
    EXPECT_TRUE(bounds(Complex(10, 0), 2).outside_outer);
    EXPECT_FALSE(bounds(Complex(10, 0), 2).antenna);
    EXPECT_FALSE(bounds(Complex(0.5, 0.5), 4).in_annulus);
}

TEST(Bounds, AnnulusAndOuterAreDisjoint) {
    Gen g(6);
    for (int trial = 0; trial < 5000; ++trial) {
        const int n = g.integer(2, 50);
        const Complex c = g.in_ring(0.0, 2 * n);
        const auto b = bounds(c, n);
        EXPECT_FALSE(b.in_annulus && b.outside_outer);
        EXPECT_FALSE(b.antenna && b.outside_outer);
    }
}

TEST(Threshold, Values) {
    for (int n = 2; n <= 20; ++n) EXPECT_FALSE(threshold_inequality(n)) << n;
    for (int n = 21; n <= 200; ++n) EXPECT_TRUE(threshold_inequality(n)) << n;
    const auto s21 = threshold_sides(21);
    EXPECT_NEAR(s21.outer_radius, 5.472136, 1e-6);
    EXPECT_NEAR(s21.lens_radius, 5.480741, 1e-6);
    const auto s20 = threshold_sides(20);
    EXPECT_NEAR(s20.outer_radius, 5.358899, 1e-6);
    EXPECT_NEAR(s20.lens_radius, 5.324555, 1e-6);
    EXPECT_TRUE(threshold_inequality(100));
}

TEST(Threshold, MonotoneGapAfterCrossing) {
    double prev = threshold_sides(21).lens_radius - threshold_sides(21).outer_radius;
    for (int n = 22; n <= 200; ++n) {
        const auto s = threshold_sides(n);
        const double gap = s.lens_radius - s.outer_radius;
        EXPECT_GT(gap, prev) << n;
        prev = gap;
    }
}

TEST(Parallelogram, Example) {
    const auto p = parallelogram(ParameterPoint(1, 1), 3);
    const std::array<Complex, 4> want{Complex(2.5, -0.5), Complex(1.5, 0.5), Complex(-2.5, 0.5),
                                      Complex(-1.5, -0.5)};
    for (int k = 0; k < 4; ++k) expect_near(p.vertices[static_cast<std::size_t>(k)], want[static_cast<std::size_t>(k)], 1e-15);
    EXPECT_FALSE(p.degenerate);
    EXPECT_TRUE(parallelogram(ParameterPoint(3, 0), 3).degenerate);
    EXPECT_FALSE(parallelogram_covering_check(ParameterPoint(3, 0), 3, 16).has_value());
    for (auto v : p.vertices) EXPECT_TRUE(p.contains(v, 1e-12));
    EXPECT_FALSE(p.contains(Complex(3.0, 0.0)));
    const auto [u, v] = p.coordinates(p.point(0.3, -0.7));
    EXPECT_NEAR(u, 0.3, 1e-15);
    EXPECT_NEAR(v, -0.7, 1e-15);
}

TEST(Parallelogram, ProximityOnSampledRoots) {
    // 1+i is a root of z^2 - 2z + 2 and lies in M_3
    const auto rep = parallelogram_attractor_proximity(ParameterPoint(1, 1), 3, 9, 5);
    EXPECT_EQ(rep.samples, 81u);
    EXPECT_TRUE(rep.all_near());
    EXPECT_THROW(parallelogram_attractor_proximity(ParameterPoint(2, 0), 3, 9, 3), DomainError);
}

TEST(Hull, MonotoneChain) {
    const std::vector<Complex> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
    const auto h = convex_hull(square);
    ASSERT_EQ(h.size(), 4u);
    double area = 0;
    for (std::size_t i = 0; i < h.size(); ++i) area += detail::cross(0.0, h[i], h[(i + 1) % h.size()]);
    EXPECT_NEAR(area / 2, 1.0, 1e-15);  // counter-clockwise
    EXPECT_EQ(convex_hull({{1, 1}, {1, 1}}).size(), 1u);
    EXPECT_EQ(convex_hull({{0, 0}, {1, 0}, {2, 0}}).size(), 2u);
}

TEST(Hull, MembershipExamples) {
    EXPECT_EQ(hull_membership(ParameterPoint(1.5, 0), 2, 4).tag, HullTag::In);
    EXPECT_EQ(hull_membership(ParameterPoint(10, 0), 2, 4).tag, HullTag::Out);
    Gen g(7);
    for (int n : {2, 3}) {
        const double outer = 1 + std::sqrt(n - 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const Complex c = g.off_axis(outer + 0.1, outer + 1.0, 0.05);
            EXPECT_EQ(hull_membership(ParameterPoint(c), n, 4).tag, HullTag::Out) << c << " " << n;
        }
    }
}

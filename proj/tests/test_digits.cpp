#include <gtest/gtest.h>

#include <set>

#include "collinear/digits.hpp"

using namespace collinear;

TEST(Digits, SmallAlphabets) {
    EXPECT_EQ(digits(DigitKind::A, 2).values(), (std::vector<int>{-1, 1}));
    EXPECT_EQ(digits(DigitKind::A, 3).values(), (std::vector<int>{-2, 0, 2}));
    EXPECT_EQ(digits(DigitKind::A, 4).values(), (std::vector<int>{-3, -1, 1, 3}));
    EXPECT_EQ(digits(DigitKind::D, 2).values(), (std::vector<int>{-1, 0, 1}));
    EXPECT_EQ(digits(DigitKind::D, 3).values(), (std::vector<int>{-2, -1, 0, 1, 2}));
}

TEST(Digits, RejectsBadAlphabet) {
    EXPECT_THROW(digits(DigitKind::A, 1), DomainError);
    EXPECT_THROW(digits(DigitKind::D, 0), DomainError);
    EXPECT_THROW(digits(DigitKind::A, -3), DomainError);
    EXPECT_THROW(digits(DigitKind::A, kMaxAlphabet + 1), DomainError);
    EXPECT_THROW(interval_hull(1), DomainError);
}

TEST(Digits, SizesSymmetryAndParity) {
    for (int n = 2; n <= 60; ++n) {
        const auto a = digits(DigitKind::A, n);
        const auto d = digits(DigitKind::D, n);
        ASSERT_EQ(a.size(), static_cast<std::size_t>(n));
        ASSERT_EQ(d.size(), static_cast<std::size_t>(2 * n - 1));
        for (int v : a) {
            EXPECT_TRUE(a.contains(-v));
            EXPECT_EQ((v - (n - 1)) % 2, 0);
            EXPECT_TRUE(d.contains(v));
        }
        for (int v = -2 * n; v <= 2 * n; ++v)
            EXPECT_EQ(d.contains(v), v >= 1 - n && v <= n - 1);
        const auto hull = interval_hull(n);
        EXPECT_EQ(hull.lo, a.min());
        EXPECT_EQ(hull.hi, a.max());
        EXPECT_EQ(hull.lo, d.min());
        EXPECT_EQ(hull.hi, d.max());
    }
}

TEST(Digits, DifferenceSetMatchesPairwiseOracle) {
    for (int n = 2; n <= 40; ++n) {
        const auto a = digits(DigitKind::A, n);
        std::set<int> oracle;
        for (int p = 1 - n; p <= n - 1; p += 2)
            for (int q = 1 - n; q <= n - 1; q += 2) oracle.insert(p - q);
        const auto diff = difference_set(a);
        EXPECT_EQ(std::vector<int>(oracle.begin(), oracle.end()), diff.values()) << "n=" << n;
        EXPECT_EQ(diff, digits(DigitKind::A, 2 * n - 1));
    }
    EXPECT_EQ(difference_set(digits(DigitKind::A, 2)).values(), (std::vector<int>{-2, 0, 2}));
    EXPECT_THROW(difference_set(digits(DigitKind::D, 3)), DomainError);
}

#include <gtest/gtest.h>

#include "collinear/certify.hpp"
#include "collinear/connectivity.hpp"
#include "support.hpp"

using namespace collinear;
using testing_support::Gen;

TEST(Certify, OnePlusI) {
    const auto cert = certify_interior({1, 1}, 3, CoeffWord(3, {-2, 2}));
    EXPECT_TRUE(cert.checks.root_residual_ok);
    EXPECT_TRUE(cert.checks.in_X_interior_ok);
    EXPECT_TRUE(cert.checks.rect_containment_ok);
    ASSERT_TRUE(cert.certified());
    EXPECT_EQ(cert.radius_kind, RadiusKind::Sampled);
    EXPECT_GE(cert.radius, 1e-4);
    EXPECT_NEAR(cert.x_margin, std::sqrt(6.0) - std::sqrt(5.0), 1e-12);
    EXPECT_EQ(cert.c0, Complex(1, 1));
}

TEST(Certify, ContainmentOracle) {
    // 2c q(c) against R(c,5) computed from the closed-form vertex
    const CoeffWord w(3, {-2, 2});
    Gen g(2);
    for (int trial = 0; trial < 2000; ++trial) {
        const Complex c = Complex(1, 1) + g.in_ring(0.0, 0.6);
        if (std::abs(c) <= 1.0 || c.imag() == 0.0) continue;
        const Complex q = 2.0 * c * (c * c - 2.0 * c + 2.0);
        const Complex psi = c.real() >= 0 ? c * 6.0 / (1.0 + c) : c * 6.0 / (1.0 - c);
        const bool inside = std::abs(q.real()) <= std::abs(psi.real()) && std::abs(q.imag()) <= std::abs(psi.imag());
        EXPECT_EQ(rect_containment(w, c), inside) << c;
    }
}

TEST(Certify, RealAndOuterParametersAreRejected) {
    const auto real = certify_interior({2.0, 0.0}, 3, CoeffWord(3, {-2}));
    EXPECT_TRUE(real.checks.root_residual_ok);
    EXPECT_FALSE(real.checks.in_X_interior_ok);
    EXPECT_FALSE(real.certified());
    EXPECT_EQ(real.radius, 0.0);
    EXPECT_EQ(real.radius_kind, RadiusKind::None);

    // roots outside B(sqrt(2n-1)) cannot be certified
    int seen = 0;
    for (const auto& p : mhat_sample(3, 4, 100'000, 0)) {
        if (std::abs(p.z) <= std::sqrt(5.0) || p.z.imag() == 0.0) continue;
        ++seen;
        const auto cert = certify_interior(p.z, 3, p.word);
        EXPECT_FALSE(cert.certified()) << p.z;
        EXPECT_FALSE(cert.checks.in_X_interior_ok);
    }
    EXPECT_GT(seen, 0);
}

TEST(Certify, Errors) {
    EXPECT_THROW(certify_interior({1, 1}, 2, CoeffWord(3, {-2, 2})), DomainError);
    EXPECT_THROW(certify_interior({0.5, 0.5}, 3, CoeffWord(3, {-2, 2})), DomainError);
    // Newton on z^2 + 1 never settles from a real start
    EXPECT_THROW(certify_interior({2.0, 0.0}, 2, CoeffWord(2, {0, 1})), NumericalError);
}

TEST(Certify, WrongWordFailsResidual) {
    // 1.2+1.1i is no root of z^2 - 2z + 2; Newton walks to 1+i
    const auto cert = certify_interior({1.2, 1.1}, 3, CoeffWord(3, {-2, 2}));
    EXPECT_FALSE(cert.checks.root_residual_ok);
    EXPECT_FALSE(cert.certified());
}

TEST(Certify, ConjugationInvariance) {
    for (const auto& p : mhat_sample(3, 4, 100'000, 0)) {
        if (!in_X_interior(p.z, 3, 1e-9) || p.z.imag() <= 0) continue;
        const auto a = certify_interior(p.z, 3, p.word);
        const auto b = certify_interior(std::conj(p.z), 3, p.word);
        EXPECT_EQ(a.certified(), b.certified()) << p.z;
        EXPECT_NEAR(a.radius, b.radius, CertifyOptions{}.radius_tol) << p.z;
    }
}

TEST(Certify, CertifiedImpliesGeometry) {
    for (const auto& cert : certify_batch(3, 4, 100'000, 0)) {
        if (!cert.certified()) continue;
        EXPECT_TRUE(in_X(cert.c0, 3));
        EXPECT_NE(covering_predicate(ParameterPoint(cert.c0), 5), Covering::Disjoint);
        EXPECT_GT(cert.radius, 0.0);
    }
}

TEST(Certify, CertifiedPointsAreConnected) {
    const auto certs = certify_batch(3, 4, 100'000, 0);
    int certified = 0;
    for (const auto& cert : certs) {
        if (!cert.certified()) continue;
        ++certified;
        EXPECT_TRUE(classify(cert.c0, 3, ClassifyOptions::rigorous()).connected()) << cert.c0;
    }
    EXPECT_GT(certified, 0);
}

TEST(Certify, NeighbourhoodNeverDisconnected) {
    const auto cert = certify_interior({1, 1}, 3, CoeffWord(3, {-2, 2}));
    ASSERT_TRUE(cert.certified());
    Gen g(5);
    for (int k = 0; k < 32; ++k) {
        const Complex c = cert.c0 + g.in_ring(0.0, cert.radius);
        EXPECT_FALSE(classify(c, 3, ClassifyOptions::rigorous()).disconnected()) << c;
    }
}

TEST(Certify, BatchAtTwentyOne) {
    // every non-real sampled root in the outer disk is certified once n >= 21
    const int n = 21;
    const double outer = 1 + std::sqrt(n - 1.0);
    const auto certs = certify_batch(n, 3, 1'000'000, 0);
    std::size_t candidates = 0;
    for (const auto& p : mhat_sample(n, 3, 1'000'000, 0))
        if (p.z.imag() != 0.0 && std::abs(p.z) <= outer && in_X_interior(p.z, n, 1e-9)) ++candidates;
    EXPECT_EQ(certs.size(), candidates);
    for (const auto& c : certs) EXPECT_TRUE(c.certified()) << c.c0 << " " << c.word.to_string();
}

TEST(Certify, BatchEmptyWithoutRoots) {
    EXPECT_TRUE(certify_batch(2, 1, 100, 0).empty());
}

TEST(Certify, BatchDeterministicAcrossThreads) {
    const auto a = certify_batch(4, 3, 10'000, 7, {}, 1);
    const auto b = certify_batch(4, 3, 10'000, 7, {}, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].c0, b[i].c0);
        EXPECT_EQ(a[i].radius, b[i].radius);
    }
}

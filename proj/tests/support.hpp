#ifndef COLLINEAR_TESTS_SUPPORT_HPP
#define COLLINEAR_TESTS_SUPPORT_HPP

// Seeded generators and small brute-force oracles shared by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace testing_support {

using Complex = std::complex<double>;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double angle() { return uniform(0.0, 2 * std::numbers::pi); }

    /// Point with modulus uniform in (r_lo, r_hi), uniform angle.
    Complex in_ring(double r_lo, double r_hi) {
        for (;;) {
            const double r = uniform(r_lo, r_hi);
            if (r > r_lo && r < r_hi) return std::polar(r, angle());
        }
    }
    /// Non-real point of the ring with |Im| >= min_im.
    Complex off_axis(double r_lo, double r_hi, double min_im) {
        for (;;) {
            const Complex c = in_ring(r_lo, r_hi);
            if (std::abs(c.imag()) >= min_im) return c;
        }
    }

private:
    std::mt19937_64 rng_;
};

/// Brute-force truncated attractor: every sum_{k=0}^{depth} a_k c^{-k},
/// a_k in {-n+1, -n+3, ..., n-1}, with powers recomputed from scratch.
inline std::vector<Complex> brute_attractor(Complex c, int n, int depth) {
    std::vector<Complex> pts{0.0};
    for (int k = 0; k <= depth; ++k) {
        const Complex p = std::pow(c, -k);
        std::vector<Complex> next;
        for (Complex z : pts)
            for (int a = -n + 1; a <= n - 1; a += 2) next.push_back(z + static_cast<double>(a) * p);
        pts = std::move(next);
    }
    return pts;
}

/// Plain breadth-first search over w -> c w + a, a in {1-n..n-1}, pruning at
/// the exact tail bound times (1 + slack), no merging. Returns the first
/// depth with no survivors, or -1 if states survive to max_depth.
inline int brute_extinction_depth(Complex c, int n, int max_depth, double slack) {
    const double rho = (n - 1) / (std::abs(c) - 1.0) * (1.0 + slack);
    std::vector<Complex> level{1.0};
    if (std::abs(level[0]) > rho) return 0;
    for (int m = 1; m <= max_depth; ++m) {
        std::vector<Complex> next;
        for (Complex w : level)
            for (int a = 1 - n; a <= n - 1; ++a) {
                const Complex v = c * w + static_cast<double>(a);
                if (std::abs(v) <= rho) next.push_back(v);
            }
        if (next.empty()) return m;
        level = std::move(next);
        if (level.size() > 5'000'000) return -1;
    }
    return -1;
}

}  // namespace testing_support

#endif  // COLLINEAR_TESTS_SUPPORT_HPP

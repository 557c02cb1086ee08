#ifndef COLLINEAR_ATTRACTOR_HPP
#define COLLINEAR_ATTRACTOR_HPP

// Finite-depth approximations of the collinear fractal
//
//   E(c,n) = { sum_{k>=0} a_k c^{-k} : a_k in A_n },
//
// the attractor of the maps z -> t + z/c, t in A_n.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "detail/point_index.hpp"
#include "digits.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace collinear {

using Complex = std::complex<double>;

/// A parameter strictly outside the closed unit disk.
class ParameterPoint {
public:
    explicit ParameterPoint(Complex c) : c_(c), modulus_(std::abs(c)) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("parameter c must be finite");
        if (!(modulus_ > 1.0)) throw DomainError("parameter c must satisfy |c| > 1");
    }
    ParameterPoint(double re, double im) : ParameterPoint(Complex(re, im)) {}

    Complex value() const noexcept { return c_; }
    double modulus() const noexcept { return modulus_; }
    double re() const noexcept { return c_.real(); }
    double im() const noexcept { return c_.imag(); }
    bool is_real() const noexcept { return c_.imag() == 0.0; }

private:
    Complex c_;
    double modulus_;
};

/// Default cap on the number of enumerated digit words.
inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

struct AttractorOptions {
    std::uint64_t budget = kDefaultPointBudget;
    unsigned threads = 1;
};

struct AttractorCloud {
    ParameterPoint c;
    int n;
    int depth;
    std::vector<Complex> points;
    /// Hausdorff distance bound between the cloud and E(c,n).
    double tail;
};

/// Every point of E(c,n) lies in the closed disk of this radius.
inline double hull_radius(const ParameterPoint& c, int n) {
    require_alphabet(n);
    return (n - 1) * c.modulus() / (c.modulus() - 1.0);
}
inline double hull_radius(Complex c, int n) { return hull_radius(ParameterPoint(c), n); }

inline double tail_radius(const ParameterPoint& c, int n, int depth) {
    return (n - 1) * std::pow(c.modulus(), -depth) / (c.modulus() - 1.0);
}

/// base^(exp) saturated at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

inline void require_point_budget(int n, int depth, std::uint64_t budget) {
    const auto count = saturating_pow(static_cast<std::uint64_t>(n), depth + 1);
    if (count > budget)
        throw ResourceError("attractor enumeration needs " + std::to_string(n) + "^" +
                            std::to_string(depth + 1) + " points, over the budget of " +
                            std::to_string(budget) + "; lower the depth");
}

namespace detail {

/// Visits sum_{k=0}^{depth} a_k c^{-k} for every word with a_0 == first,
/// in lexicographic digit order. Depth-first over an explicit digit stack.
template <class Visit>
void enumerate_subtree(const std::vector<Complex>& inv_powers, const DigitSet& alphabet,
                       int depth, int first, Visit&& visit) {
    const auto& digits = alphabet.values();
    const std::size_t width = digits.size();
    if (depth == 0) {
        visit(Complex(first, 0.0));
        return;
    }
    std::vector<std::size_t> choice(static_cast<std::size_t>(depth) + 1, 0);
    std::vector<Complex> partial(static_cast<std::size_t>(depth) + 1);
    partial[0] = Complex(first, 0.0);
    int level = 1;
    choice[1] = 0;
    while (level >= 1) {
        const auto lv = static_cast<std::size_t>(level);
        if (choice[lv] == width) {
            --level;
            if (level >= 1) ++choice[static_cast<std::size_t>(level)];
            continue;
        }
        partial[lv] = partial[lv - 1] + static_cast<double>(digits[choice[lv]]) * inv_powers[lv];
        if (level == depth) {
            visit(partial[lv]);
            ++choice[lv];
        } else {
            ++level;
            choice[static_cast<std::size_t>(level)] = 0;
        }
    }
}

inline std::vector<Complex> inverse_powers(const ParameterPoint& c, int depth) {
    std::vector<Complex> p(static_cast<std::size_t>(depth) + 1);
    p[0] = 1.0;
    const Complex inv = 1.0 / c.value();
    for (std::size_t k = 1; k < p.size(); ++k) p[k] = p[k - 1] * inv;
    return p;
}

}  // namespace detail

/// Calls visit(z) for all n^(depth+1) digit sums, sequentially.
template <class Visit>
void for_each_attractor_point(const ParameterPoint& c, int n, int depth, Visit&& visit) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    const DigitSet alphabet(DigitKind::A, n);
    const auto inv_powers = detail::inverse_powers(c, depth);
    for (int first : alphabet) detail::enumerate_subtree(inv_powers, alphabet, depth, first, visit);
}

/// All n^(depth+1) truncated digit sums, deduplicated at dedup_tol
/// (0 = bitwise). Subtrees of the leading digit run in parallel; the
/// merged order is lexicographic in the digit word.
inline AttractorCloud attractor_points(const ParameterPoint& c, int n, int depth,
                                       double dedup_tol = 0.0, AttractorOptions opts = {}) {
    require_alphabet(n);
    if (depth < 0) throw DomainError("depth must be >= 0");
    if (!(dedup_tol >= 0)) throw DomainError("dedup_tol must be >= 0");
    require_point_budget(n, depth, opts.budget);

    const DigitSet alphabet(DigitKind::A, n);
    const auto inv_powers = detail::inverse_powers(c, depth);
    std::vector<std::vector<Complex>> parts(alphabet.size());
    parallel_for(alphabet.size(), opts.threads, [&](std::size_t i) {
        auto& out = parts[i];
        out.reserve(static_cast<std::size_t>(saturating_pow(static_cast<std::uint64_t>(n), depth)));
        detail::enumerate_subtree(inv_powers, alphabet, depth, alphabet.values()[i],
                                  [&](Complex z) { out.push_back(z); });
    });

    std::vector<Complex> all;
    all.reserve(static_cast<std::size_t>(saturating_pow(static_cast<std::uint64_t>(n), depth + 1)));
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());

    AttractorCloud cloud{c, n, depth, {}, tail_radius(c, n, depth)};
    cloud.points = detail::dedup(all, dedup_tol);
    return cloud;
}

/// First-level piece t + z/c applied to a point set.
inline std::vector<Complex> piece(const ParameterPoint& c, int n, int t,
                                  std::span<const Complex> points) {
    const DigitSet alphabet(DigitKind::A, n);
    if (!alphabet.contains(t))
        throw DomainError("piece translation " + std::to_string(t) + " is not in A_" +
                          std::to_string(n));
    std::vector<Complex> out;
    out.reserve(points.size());
    for (auto z : points) out.push_back(static_cast<double>(t) + z / c.value());
    return out;
}

/// Checks E(c,n) (-) E(c,n) = E(c,2n-1) on depth-limited clouds: the
/// pairwise differences of the depth-d cloud of E(c,n) and the depth-d cloud
/// of E(c,2n-1) must coincide as sets within tol.
inline bool difference_identity_check(const ParameterPoint& c, int n, int depth, double tol,
                                      AttractorOptions opts = {}) {
    require_alphabet(n);
    const auto size = saturating_pow(static_cast<std::uint64_t>(n), depth + 1);
    if (size > std::numeric_limits<std::uint32_t>::max() || size * size > opts.budget)
        throw ResourceError("difference set of " + std::to_string(size) +
                            " points exceeds the budget; lower the depth");
    const auto base = attractor_points(c, n, depth, 0.0, opts);
    const auto wide = attractor_points(c, 2 * n - 1, depth, 0.0, opts);

    std::vector<Complex> diffs;
    diffs.reserve(base.points.size() * base.points.size());
    for (auto p : base.points)
        for (auto q : base.points) diffs.push_back(p - q);
    diffs = detail::dedup(diffs, tol);
    return detail::same_set_within(diffs, wide.points, tol);
}

/// CSV dump, one "re,im" line per point with 17 significant digits.
inline void write_points_csv(std::ostream& out, std::span<const Complex> points) {
    char buf[64];
    for (auto z : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out << buf;
    }
}

}  // namespace collinear

#endif  // COLLINEAR_ATTRACTOR_HPP

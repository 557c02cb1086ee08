#ifndef COLLINEAR_POLYROOTS_HPP
#define COLLINEAR_POLYROOTS_HPP

// Zeros of polynomials with coefficients in D_n:
//
//   q(z) = z^m + a_1 z^{m-1} + ... + a_m = z^m (1 + sum a_k z^{-k}),
//
// whose roots outside the unit disk form a dense subset of M_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "attractor.hpp"
#include "digits.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace collinear {

/// Coefficients a_1..a_m drawn from D_n.
class CoeffWord {
public:
    CoeffWord(int n, std::vector<int> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
        require_alphabet(n);
        if (coeffs_.empty()) throw DomainError("coefficient word must have length >= 1");
        for (int a : coeffs_)
            if (a < 1 - n || a > n - 1)
                throw DomainError("coefficient " + std::to_string(a) + " is not in D_" +
                                  std::to_string(n));
    }

    int n() const noexcept { return n_; }
    const std::vector<int>& coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size(); }

    /// Word with a_k -> (-1)^k a_k; its roots are the negated roots.
    CoeffWord alternated() const {
        auto c = coeffs_;
        for (std::size_t k = 0; k < c.size(); k += 2) c[k] = -c[k];
        return CoeffWord(n_, std::move(c));
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(coeffs_[k]);
        }
        return s + ")";
    }

    friend bool operator==(const CoeffWord& a, const CoeffWord& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    /// Shorter words first, then lexicographic.
    friend bool operator<(const CoeffWord& a, const CoeffWord& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
        return a.coeffs_ < b.coeffs_;
    }

private:
    int n_;
    std::vector<int> coeffs_;
};

struct PolyValue {
    Complex value;
    Complex derivative;
    /// sum |a_k| |z|^{m-k} with a_0 = 1; scale of the rounding error.
    double magnitude;
};

/// Horner evaluation of the monic polynomial and its derivative.
inline PolyValue evaluate(std::span<const int> coeffs, Complex z) {
    Complex p = 1.0, dp = 0.0;
    double mag = 1.0;
    const double r = std::abs(z);
    for (int a : coeffs) {
        dp = dp * z + p;
        p = p * z + static_cast<double>(a);
        mag = mag * r + std::abs(a);
    }
    return {p, dp, mag};
}
inline PolyValue evaluate(const CoeffWord& w, Complex z) { return evaluate(w.coeffs(), z); }

struct RootPoint {
    Complex z;
    CoeffWord word;
    /// |q(z)| after polishing.
    double residual;
};

/// Roots within this distance of the unit circle are treated as on it.
inline constexpr double kUnitCircleTol = 1e-6;
inline constexpr int kAberthIterations = 200;

inline double residual_bound(Complex z, std::size_t degree) {
    return 1e-12 * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(degree));
}

/// All complex roots of the monic polynomial (with multiplicity), found by
/// Aberth-Ehrlich simultaneous iteration and polished by Newton's method.
inline std::vector<Complex> all_roots(std::span<const int> coeffs) {
    const std::size_t m = coeffs.size();
    if (m == 0) return {};
    if (m == 1) return {Complex(-coeffs[0], 0.0)};

    int max_coeff = 0;
    for (int a : coeffs) max_coeff = std::max(max_coeff, std::abs(a));
    const double radius = 1.0 + max_coeff;

    std::vector<Complex> z(m);
    for (std::size_t k = 0; k < m; ++k)
        z[k] = std::polar(radius, 2 * std::numbers::pi * k / m + 0.4);

    for (int it = 0; it < kAberthIterations; ++it) {
        double worst = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const auto v = evaluate(coeffs, z[k]);
            if (v.value == 0.0) continue;
            const Complex ratio = v.value / v.derivative;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * sum);
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
                z[k] -= step;
                worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
            }
        }
        if (worst < 1e-15) break;
    }

    for (auto& root : z) {
        auto best = evaluate(coeffs, root);
        for (int it = 0; it < 8; ++it) {
            if (best.derivative == 0.0) break;
            const Complex next = root - best.value / best.derivative;
            const auto v = evaluate(coeffs, next);
            if (!(std::abs(v.value) < std::abs(best.value))) break;
            root = next;
            best = v;
        }
    }
    return z;
}

/// Roots outside the closed unit disk, polished and sorted by (re, im).
/// Throws NumericalError naming the word if a root misses the residual bound.
inline std::vector<RootPoint> roots(const CoeffWord& word) {
    auto coeffs = word.coeffs();
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();  // roots at 0
    std::vector<RootPoint> out;
    for (Complex z : all_roots(coeffs)) {
        const double res = std::abs(evaluate(word, z).value);
        if (!(res <= residual_bound(z, word.degree())))
            throw NumericalError("root finder did not converge for word " + word.to_string() +
                                 " (residual " + std::to_string(res) + ")");
        if (std::abs(z) > 1.0 + kUnitCircleTol) out.push_back({z, word, res});
    }
    std::sort(out.begin(), out.end(), [](const RootPoint& a, const RootPoint& b) {
        return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Sampling the polynomial zero set

struct MhatStats {
    std::uint64_t words = 0;
    std::uint64_t failed_words = 0;
    int exhaustive_degree = 0;
};

namespace detail {

/// Canonical representative of {w, alternated(w)}: the lexicographically
/// smaller coefficient vector.
inline bool is_canonical(const std::vector<int>& c) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        const int alt = (k % 2 == 0) ? -c[k] : c[k];
        if (c[k] != alt) return c[k] < alt;
    }
    return true;
}

inline std::vector<int> canonical(std::vector<int> c) {
    if (is_canonical(c)) return c;
    for (std::size_t k = 0; k < c.size(); k += 2) c[k] = -c[k];
    return c;
}

}  // namespace detail

/// Roots of words over D_n of degree 1..max_degree. A degree m is enumerated
/// exhaustively when (2n-1)^m <= budget, otherwise `budget` words are drawn
/// uniformly (seeded). Only one word per {w, alternated(w)} pair is solved;
/// the partner's roots are the negations. Words ending in 0 are skipped since
/// they repeat a shorter word's roots outside the disk. Output is sorted by
/// word, then by (re, im).
inline std::vector<RootPoint> mhat_sample(int n, int max_degree, std::uint64_t budget,
                                          std::uint64_t seed, unsigned threads = 1,
                                          MhatStats* stats = nullptr) {
    require_alphabet(n);
    if (max_degree < 1) throw DomainError("max_degree must be >= 1");
    if (budget < 1) throw DomainError("budget must be >= 1");
    const int base = 2 * n - 1;

    std::vector<std::vector<int>> words;
    MhatStats local;
    for (int m = 1; m <= max_degree; ++m) {
        const auto total = saturating_pow(static_cast<std::uint64_t>(base), m);
        if (total <= budget) {
            local.exhaustive_degree = m;
            std::vector<int> w(static_cast<std::size_t>(m), 1 - n);
            while (true) {
                if (w.back() != 0 && detail::is_canonical(w)) words.push_back(w);
                int k = m - 1;
                while (k >= 0 && w[static_cast<std::size_t>(k)] == n - 1) w[static_cast<std::size_t>(k--)] = 1 - n;
                if (k < 0) break;
                ++w[static_cast<std::size_t>(k)];
            }
        } else {
            std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(m)));
            std::uniform_int_distribution<int> digit(1 - n, n - 1);
            std::set<std::vector<int>> drawn;
            for (std::uint64_t s = 0; s < budget; ++s) {
                std::vector<int> w(static_cast<std::size_t>(m));
                for (auto& a : w) a = digit(rng);
                if (w.back() != 0) drawn.insert(detail::canonical(std::move(w)));
            }
            words.insert(words.end(), drawn.begin(), drawn.end());
        }
    }
    local.words = words.size();

    std::vector<std::vector<RootPoint>> found(words.size());
    std::vector<char> failed(words.size(), 0);
    parallel_for(words.size(), threads, [&](std::size_t i) {
        const CoeffWord word(n, words[i]);
        try {
            auto rs = roots(word);
            const CoeffWord partner = word.alternated();
            const bool distinct = !(partner == word);
            std::vector<RootPoint> out;
            out.reserve(rs.size() * 2);
            for (const auto& r : rs) {
                out.push_back(r);
                if (distinct)
                    out.push_back({-r.z, partner, std::abs(evaluate(partner, -r.z).value)});
            }
            found[i] = std::move(out);
        } catch (const NumericalError&) {
            failed[i] = 1;
        }
    });

    std::vector<RootPoint> all;
    for (std::size_t i = 0; i < words.size(); ++i) {
        local.failed_words += static_cast<std::uint64_t>(failed[i]);
        for (auto& r : found[i]) all.push_back(std::move(r));
    }
    std::sort(all.begin(), all.end(), [](const RootPoint& a, const RootPoint& b) {
        if (!(a.word == b.word)) return a.word < b.word;
        return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
    });
    if (stats) *stats = local;
    return all;
}

/// Newton's method on the monic polynomial from `start`. Returns the limit
/// if the iteration settles, nullopt if it diverges.
inline std::optional<Complex> newton_root(std::span<const int> coeffs, Complex start,
                                          int max_iterations = 100) {
    Complex z = start;
    for (int it = 0; it < max_iterations; ++it) {
        const auto v = evaluate(coeffs, z);
        if (v.value == 0.0) return z;
        if (v.derivative == 0.0) return std::nullopt;
        const Complex step = v.value / v.derivative;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)))
            return z;
    }
    const auto v = evaluate(coeffs, z);
    if (std::abs(v.value) <= 1e-12 * v.magnitude) return z;
    return std::nullopt;
}

/// Cap on search nodes explored by in_mhat.
inline constexpr std::uint64_t kInMhatNodeBudget = 10'000'000;

/// Shortest word over D_n (degree <= max_degree) whose polynomial has a root
/// within tol of c. Breadth-first over the same recursion w -> c*w + a used
/// by the connectivity search, carrying dw/dc so that a Newton step from c
/// can be estimated at every node; candidates are confirmed by running
/// Newton to convergence.
inline std::optional<CoeffWord> in_mhat(const ParameterPoint& c, int n, int max_degree,
                                        double tol) {
    require_alphabet(n);
    if (max_degree < 1) return std::nullopt;
    const Complex z = c.value();
    const double rho = (n - 1) / (c.modulus() - 1.0);

    struct Node {
        Complex w;
        Complex dw;
        std::int32_t parent;
        std::int32_t digit;
    };
    std::vector<std::vector<Node>> levels{{Node{1.0, 0.0, -1, 0}}};
    std::uint64_t nodes = 0;

    auto word_of = [&](int depth, std::size_t index) {
        std::vector<int> digits(static_cast<std::size_t>(depth));
        for (int m = depth; m >= 1; --m) {
            const Node& node = levels[static_cast<std::size_t>(m)][index];
            digits[static_cast<std::size_t>(m - 1)] = node.digit;
            index = static_cast<std::size_t>(node.parent);
        }
        return digits;
    };

    for (int m = 1; m <= max_degree; ++m) {
        std::vector<Node> next;
        const auto& frontier = levels.back();
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const Node& p = frontier[i];
            const Complex cw = z * p.w;
            const Complex dcw = p.w + z * p.dw;
            for (int a = 1 - n; a <= n - 1; ++a) {
                if (++nodes > kInMhatNodeBudget) return std::nullopt;
                const Complex w = cw + static_cast<double>(a);
                const double slack = 1e-6 * rho + 2 * tol * std::abs(dcw) + 1e-12;
                if (std::abs(w) > rho + slack) continue;
                next.push_back(Node{w, dcw, static_cast<std::int32_t>(i), a});
            }
        }
        if (next.empty()) return std::nullopt;
        levels.push_back(std::move(next));

        // candidates at this degree, in search order
        const auto& level = levels.back();
        for (std::size_t i = 0; i < level.size(); ++i) {
            const Node& node = level[i];
            const double mag = std::abs(node.dw);
            if (!(std::abs(node.w) <= 2 * tol * mag + 1e-12 * std::pow(std::max(1.0, c.modulus()), m)))
                continue;
            auto digits = word_of(m, i);
            const auto root = newton_root(digits, z);
            if (root && std::abs(*root - z) <= tol && std::abs(*root) > 1.0)
                return CoeffWord(n, std::move(digits));
        }
    }
    return std::nullopt;
}

}  // namespace collinear

#endif  // COLLINEAR_POLYROOTS_HPP

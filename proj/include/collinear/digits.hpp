#ifndef COLLINEAR_DIGITS_HPP
#define COLLINEAR_DIGITS_HPP

// Integer digit alphabets of the collinear IFS.
//
//   A_n = {-n+1, -n+3, ..., n-3, n-1}     translations of the IFS maps
//   D_n = {1-n, ..., -1, 0, 1, ..., n-1}  coefficient alphabet of the locus
//
// A_n (-) A_n = A_{2n-1} and D_n = A_{2n-1} / 2.

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"

namespace collinear {

enum class DigitKind { A, D };

/// Largest alphabet parameter accepted by the constructors.
inline constexpr int kMaxAlphabet = 1 << 20;

inline void require_alphabet(int n) {
    if (n < 2) throw DomainError("alphabet parameter n must be >= 2, got " + std::to_string(n));
    if (n > kMaxAlphabet)
        throw DomainError("alphabet parameter n must be <= 2^20, got " + std::to_string(n));
}

class DigitSet {
public:
    DigitSet(DigitKind kind, int n) : kind_(kind), n_(n) {
        require_alphabet(n);
        if (kind == DigitKind::A) {
            values_.reserve(static_cast<std::size_t>(n));
            for (int v = 1 - n; v <= n - 1; v += 2) values_.push_back(v);
        } else {
            values_.reserve(static_cast<std::size_t>(2 * n - 1));
            for (int v = 1 - n; v <= n - 1; ++v) values_.push_back(v);
        }
    }

    DigitKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    const std::vector<int>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    int min() const noexcept { return values_.front(); }
    int max() const noexcept { return values_.back(); }

    bool contains(int v) const noexcept {
        if (v < 1 - n_ || v > n_ - 1) return false;
        return kind_ == DigitKind::D || ((v + n_ - 1) % 2 == 0);
    }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const DigitSet&, const DigitSet&) = default;

private:
    DigitKind kind_;
    int n_;
    std::vector<int> values_;
};

inline DigitSet digits(DigitKind kind, int n) { return DigitSet(kind, n); }

/// I_n = [1-n, n-1], the convex hull of D_n.
struct IntervalHull {
    int lo;
    int hi;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

inline IntervalHull interval_hull(int n) {
    require_alphabet(n);
    return {1 - n, n - 1};
}

/// Difference set s (-) s of an A-alphabet, formed by brute force over all
/// pairs. The result always equals digits(A, 2n-1); a mismatch would be a
/// logic error in this header and is reported as such.
inline DigitSet difference_set(const DigitSet& s) {
    if (s.kind() != DigitKind::A) throw DomainError("difference_set expects an A-alphabet");
    const int n = s.n();
    // offsets in [-(2n-2), 2n-2] mapped onto a presence table
    std::vector<char> seen(static_cast<std::size_t>(4 * n - 3), 0);
    for (int p : s)
        for (int q : s) seen[static_cast<std::size_t>(p - q + 2 * n - 2)] = 1;
    std::vector<int> diffs;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) diffs.push_back(static_cast<int>(i) - (2 * n - 2));

    DigitSet closed(DigitKind::A, 2 * n - 1);
    if (diffs != closed.values()) throw std::logic_error("A_n (-) A_n differs from A_{2n-1}");
    return closed;
}

}  // namespace collinear

#endif  // COLLINEAR_DIGITS_HPP

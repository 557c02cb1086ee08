#ifndef COLLINEAR_DETAIL_POINT_INDEX_HPP
#define COLLINEAR_DETAIL_POINT_INDEX_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace collinear::detail {

struct CellKey {
    std::int64_t x;
    std::int64_t y;
    friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(k.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Bit pattern of a coordinate with -0.0 folded onto +0.0.
inline std::int64_t exact_bits(double v) noexcept {
    return std::bit_cast<std::int64_t>(v + 0.0);
}

/// Spatial hash over complex points. With tol == 0 membership is bitwise
/// equality; with tol > 0 it is Euclidean distance <= tol, answered by
/// probing the 3x3 block of cells of pitch tol around the query.
class PointIndex {
public:
    explicit PointIndex(double tol) : tol_(tol) {}

    void reserve(std::size_t n) {
        if (tol_ == 0) exact_.reserve(n);
        else cells_.reserve(n);
    }

    bool contains_near(std::complex<double> z) const {
        if (tol_ == 0) return exact_.count(exact_key(z)) != 0;
        const CellKey k = cell(z);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find({k.x + dx, k.y + dy});
                if (it == cells_.end()) continue;
                for (auto p : it->second)
                    if (std::abs(p - z) <= tol_) return true;
            }
        return false;
    }

    void insert(std::complex<double> z) {
        if (tol_ == 0) exact_.insert(exact_key(z));
        else cells_[cell(z)].push_back(z);
    }

    /// Inserts z unless a point within tol is already present.
    bool insert_if_new(std::complex<double> z) {
        if (contains_near(z)) return false;
        insert(z);
        return true;
    }

private:
    static CellKey exact_key(std::complex<double> z) noexcept {
        return {exact_bits(z.real()), exact_bits(z.imag())};
    }
    CellKey cell(std::complex<double> z) const noexcept {
        return {static_cast<std::int64_t>(std::floor(z.real() / tol_)),
                static_cast<std::int64_t>(std::floor(z.imag() / tol_))};
    }

    double tol_;
    std::unordered_set<CellKey, CellKeyHash> exact_;
    std::unordered_map<CellKey, std::vector<std::complex<double>>, CellKeyHash> cells_;
};

/// First-occurrence deduplication at resolution tol (0 = bitwise).
inline std::vector<std::complex<double>> dedup(std::span<const std::complex<double>> pts,
                                               double tol) {
    PointIndex index(tol);
    index.reserve(pts.size());
    std::vector<std::complex<double>> out;
    out.reserve(pts.size());
    for (auto z : pts)
        if (index.insert_if_new(z)) out.push_back(z);
    return out;
}

/// True iff every point of `a` lies within tol of some point of `b`.
inline bool covered_within(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b, double tol) {
    PointIndex index(tol);
    index.reserve(b.size());
    for (auto z : b) index.insert(z);
    for (auto z : a)
        if (!index.contains_near(z)) return false;
    return true;
}

/// Two-sided set equality at tolerance tol.
inline bool same_set_within(std::span<const std::complex<double>> a,
                            std::span<const std::complex<double>> b, double tol) {
    return covered_within(a, b, tol) && covered_within(b, a, tol);
}

}  // namespace collinear::detail

#endif  // COLLINEAR_DETAIL_POINT_INDEX_HPP

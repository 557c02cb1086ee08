#ifndef COLLINEAR_GEOMETRY_HPP
#define COLLINEAR_GEOMETRY_HPP

// Closed-form regions around the connectedness locus and the covering
// rectangle R(c,n).
//
//   X_n     = { c not real, |c| > 1, |c+1| <= sqrt(2n), |c-1| <= sqrt(2n) }
//   psi     = c(n+1)/(1+c) if Re c >= 0, c(n+1)/(1-c) otherwise
//   R(c,n)  = axis-aligned rectangle with vertices +-psi, +-conj(psi)
//
// R(c,n) is covered by its images t + R(c,n)/c, t in A_n, exactly when
// s = |c|^2 + 2|Re c| <= n (that is, c in X_{(n+1)/2}).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "attractor.hpp"
#include "digits.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace collinear {

namespace detail {
// Closed disk constraints tolerate a few ulps so boundary points built from
// a rounded square root, such as i*sqrt(2n-1), still count as inside.
inline constexpr double kClosedSlack = 8 * std::numeric_limits<double>::epsilon();
}  // namespace detail

/// Membership in X_order; order may be a half-integer such as (n+1)/2.
inline bool in_X(Complex c, double order) {
    if (c.imag() == 0.0) return false;
    if (!(std::norm(c) > 1.0)) return false;
    const double r2 = 2.0 * order * (1.0 + detail::kClosedSlack);
    return std::norm(c + 1.0) <= r2 && std::norm(c - 1.0) <= r2;
}

/// Smallest slack of the four constraints defining X_n (negative outside).
inline double x_slack(Complex c, double order) {
    const double r = std::sqrt(2.0 * order);
    return std::min({std::abs(c.imag()), std::abs(c) - 1.0, r - std::abs(c + 1.0),
                     r - std::abs(c - 1.0)});
}

/// Every constraint of X_n holds strictly and with slack >= margin.
inline bool in_X_interior(Complex c, double order, double margin) {
    if (!(margin >= 0)) throw DomainError("margin must be >= 0");
    const double slack = x_slack(c, order);
    return slack > 0 && slack >= margin;
}

/// Vertex psi(c,n) of the covering rectangle.
inline Complex cover_vertex(const ParameterPoint& c, int n) {
    const Complex z = c.value();
    const double scale = n + 1.0;
    return c.re() >= 0 ? z * scale / (1.0 + z) : z * scale / (1.0 - z);
}

struct CoverRect {
    ParameterPoint c;
    int n;
    Complex psi;
    double half_width;
    double half_height;
    /// Real c collapses the rectangle onto a segment.
    bool degenerate;

    std::array<Complex, 4> vertices() const {
        return {psi, std::conj(psi), -psi, -std::conj(psi)};
    }

    /// Closed membership with the half extents inflated by a relative tol.
    bool contains(Complex z, double tol = 0.0) const noexcept {
        return std::abs(z.real()) <= half_width * (1.0 + tol) &&
               std::abs(z.imag()) <= half_height * (1.0 + tol);
    }
};

inline CoverRect cover_rect(const ParameterPoint& c, int n) {
    require_alphabet(n);
    const Complex psi = cover_vertex(c, n);
    return {c, n, psi, std::abs(psi.real()), std::abs(psi.imag()), c.is_real()};
}

enum class Covering { Covers, Critical, Disjoint };

inline const char* to_string(Covering k) noexcept {
    switch (k) {
        case Covering::Covers: return "Covers";
        case Covering::Critical: return "Critical";
        case Covering::Disjoint: return "Disjoint";
    }
    return "?";
}

/// Default half-width of the Critical band, relative to n. Wide enough for
/// parameters quoted to six significant digits.
inline constexpr double kCriticalBand = 1e-5;

/// s = |c|^2 + 2|Re c|.
inline double covering_parameter(Complex c) {
    return std::norm(c) + 2.0 * std::abs(c.real());
}

inline Covering covering_predicate(const ParameterPoint& c, int n,
                                   double critical_band = kCriticalBand) {
    require_alphabet(n);
    if (c.is_real()) throw DomainError("covering predicate requires a non-real parameter");
    const double s = covering_parameter(c.value());
    if (std::abs(s - n) <= critical_band * n) return Covering::Critical;
    return s < n ? Covering::Covers : Covering::Disjoint;
}

/// Number of lattice samples of R(c,n) not covered by any child
/// t + R(c,n)/c. A sample z is in child t iff c(z - t) is in R(c,n).
inline std::size_t uncovered_samples(const CoverRect& rect, int grid_points, double tol = 0.0,
                                     unsigned threads = 1) {
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    const Complex c = rect.c.value();
    const DigitSet alphabet(DigitKind::A, rect.n);
    const auto g = static_cast<std::size_t>(grid_points);
    std::vector<std::size_t> misses(g, 0);
    parallel_for(g, threads, [&](std::size_t row) {
        const double y = -rect.half_height + 2.0 * rect.half_height * row / (g - 1);
        for (std::size_t col = 0; col < g; ++col) {
            const double x = -rect.half_width + 2.0 * rect.half_width * col / (g - 1);
            const Complex z(x, y);
            bool hit = false;
            for (int t : alphabet) {
                if (rect.contains(c * (z - static_cast<double>(t)), tol)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) ++misses[row];
        }
    });
    std::size_t total = 0;
    for (auto m : misses) total += m;
    return total;
}

/// Grid test of R(c,n) being covered by its n first-level images.
inline bool covering_check_geometric(const ParameterPoint& c, int n, int grid_points,
                                     double tol = 0.0, unsigned threads = 1) {
    return uncovered_samples(cover_rect(c, n), grid_points, tol, threads) == 0;
}

struct BoundsRecord {
    bool in_annulus;
    bool outside_outer;
    bool antenna;
};

/// Closed-form inner and outer bounds on M_n.
inline BoundsRecord bounds(Complex c, int n) {
    require_alphabet(n);
    const double r = std::abs(c);
    const bool real = c.imag() == 0.0;
    BoundsRecord b{};
    b.in_annulus = r > 1.0 && r < std::sqrt(static_cast<double>(n));
    b.outside_outer = real ? r > n : r > 1.0 + std::sqrt(n - 1.0);
    b.antenna = real && r > 1.0 && r < n;
    return b;
}

/// Both sides of 1 + sqrt(n-1) < -1 + sqrt(2n).
struct ThresholdSides {
    double outer_radius;
    double lens_radius;
    bool holds() const noexcept { return outer_radius < lens_radius; }
};

inline ThresholdSides threshold_sides(int n) {
    require_alphabet(n);
    return {1.0 + std::sqrt(n - 1.0), -1.0 + std::sqrt(2.0 * n)};
}

/// True iff the outer disk B(1+sqrt(n-1), 0) sits inside both lens disks.
inline bool threshold_inequality(int n) { return threshold_sides(n).holds(); }

// ---------------------------------------------------------------------------
// Parallelogram P(c,n) = { u + v/c : |u| <= n-1, |v| <= 1 }

struct Parallelogram {
    int n;
    Complex inv_c;
    std::array<Complex, 4> vertices;
    bool degenerate;

    /// Affine coordinates (u, v) of z in the basis (1, 1/c).
    std::pair<double, double> coordinates(Complex z) const noexcept {
        const double v = z.imag() / inv_c.imag();
        return {z.real() - v * inv_c.real(), v};
    }

    bool contains(Complex z, double tol = 0.0) const noexcept {
        const auto [u, v] = coordinates(z);
        return std::abs(u) <= (n - 1) * (1.0 + tol) && std::abs(v) <= 1.0 + tol;
    }

    Complex point(double u, double v) const noexcept { return u + v * inv_c; }
};

inline Parallelogram parallelogram(const ParameterPoint& c, int n) {
    require_alphabet(n);
    const Complex inv = 1.0 / c.value();
    const double e = n - 1.0;
    return {n, inv, {e + inv, e - inv, -e - inv, -e + inv}, c.is_real()};
}

/// Grid test of P(c,n) being covered by t + P(c,n)/c, t in A_n.
/// Returns nullopt for real c, where P collapses onto a segment.
inline std::optional<bool> parallelogram_covering_check(const ParameterPoint& c, int n,
                                                        int grid_points, double tol = 0.0) {
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    const auto p = parallelogram(c, n);
    if (p.degenerate) return std::nullopt;
    const DigitSet alphabet(DigitKind::A, n);
    const auto g = grid_points;
    for (int i = 0; i < g; ++i) {
        const double u = (n - 1.0) * (-1.0 + 2.0 * i / (g - 1));
        for (int j = 0; j < g; ++j) {
            const double v = -1.0 + 2.0 * j / (g - 1);
            const Complex z = p.point(u, v);
            bool hit = false;
            for (int t : alphabet)
                if (p.contains(c.value() * (z - static_cast<double>(t)), tol)) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
    }
    return true;
}

struct ProximityReport {
    std::size_t samples = 0;
    std::size_t near = 0;
    double radius = 0;
    bool all_near() const noexcept { return near == samples; }
};

/// Evidence for P(c,2n-1) inside E(c,2n-1): the share of lattice points of
/// the parallelogram within the tail radius of the depth-d attractor cloud.
/// Points of E(c,2n-1) always pass, so a miss rules a sample out of E.
inline ProximityReport parallelogram_attractor_proximity(const ParameterPoint& c, int n,
                                                         int grid_points, int depth,
                                                         AttractorOptions opts = {}) {
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    const int wide = 2 * n - 1;
    const auto p = parallelogram(c, wide);
    if (p.degenerate) throw DomainError("parallelogram is degenerate for real c");
    const auto cloud = attractor_points(c, wide, depth, 0.0, opts);
    ProximityReport rep;
    rep.radius = cloud.tail;
    detail::PointIndex index(rep.radius);
    for (auto z : cloud.points) index.insert(z);
    for (int i = 0; i < grid_points; ++i)
        for (int j = 0; j < grid_points; ++j) {
            const double u = (wide - 1.0) * (-1.0 + 2.0 * i / (grid_points - 1));
            const double v = -1.0 + 2.0 * j / (grid_points - 1);
            ++rep.samples;
            if (index.contains_near(p.point(u, v))) ++rep.near;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Convex hulls

namespace detail {

inline double cross(Complex o, Complex a, Complex b) noexcept {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double segment_distance(Complex p, Complex a, Complex b) noexcept {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace detail

/// Counter-clockwise hull by Andrew's monotone chain, collinear points
/// dropped. Degenerate inputs give one or two vertices.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    return hull;
}

enum class HullTag { In, Out, Unknown };

inline const char* to_string(HullTag t) noexcept {
    switch (t) {
        case HullTag::In: return "In";
        case HullTag::Out: return "Out";
        case HullTag::Unknown: return "Unknown";
    }
    return "?";
}

struct HullVerdict {
    HullTag tag;
    /// Distance from 2c to the cloud hull; 0 when inside or on it.
    double distance;
    /// Hausdorff bound between the cloud and E(c,2n-1).
    double tail;
};

/// Slack for the signed-area tests, relative to the hull scale.
inline constexpr double kHullSlack = 1e-12;

/// Decides 2c against the convex hull H(c,2n-1), using the depth-d cloud:
/// inside the cloud hull means inside H; farther than the tail radius from
/// it means outside H.
inline HullVerdict hull_membership(const ParameterPoint& c, int n, int depth,
                                   AttractorOptions opts = {}) {
    const auto cloud = attractor_points(c, 2 * n - 1, depth, 0.0, opts);
    const auto hull = convex_hull(cloud.points);
    const Complex p = 2.0 * c.value();
    const double scale = std::max(1.0, hull_radius(c, 2 * n - 1));
    const double slack = kHullSlack * scale;

    bool strictly_inside = false;
    double dist = 0;
    if (hull.size() >= 3) {
        strictly_inside = true;
        bool weakly_inside = true;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Complex a = hull[i];
            const Complex b = hull[(i + 1) % hull.size()];
            const double area = detail::cross(a, b, p) / std::max(std::abs(b - a), slack);
            if (area <= slack) strictly_inside = false;
            if (area < -slack) weakly_inside = false;
        }
        if (!weakly_inside) {
            dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < hull.size(); ++i)
                dist = std::min(dist, detail::segment_distance(p, hull[i], hull[(i + 1) % hull.size()]));
        }
    } else {
        const Complex a = hull.front();
        const Complex b = hull.back();
        dist = detail::segment_distance(p, a, b);
        if (hull.size() == 2 && dist <= slack) {
            const double t = ((p - a) * std::conj(b - a)).real() / std::norm(b - a);
            strictly_inside = t > kHullSlack && t < 1.0 - kHullSlack;
        }
        if (dist <= slack) dist = 0;
    }

    HullTag tag = HullTag::Unknown;
    if (strictly_inside) tag = HullTag::In;
    else if (dist > cloud.tail) tag = HullTag::Out;
    return {tag, strictly_inside ? 0.0 : dist, cloud.tail};
}

}  // namespace collinear

#endif  // COLLINEAR_GEOMETRY_HPP

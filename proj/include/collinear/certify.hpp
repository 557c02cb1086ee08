#ifndef COLLINEAR_CERTIFY_HPP
#define COLLINEAR_CERTIFY_HPP

// Interior points of M_n from polynomial witnesses.
//
// Let c0 be a root of q(z) = z^m + a_1 z^{m-1} + ... + a_m, a_k in D_n, with
// c0 in the interior of X_n. For c in X_n the rectangle R(c,2n-1) lies in
// E(c,2n-1) (covering property), so any c with
//
//   2 c q(c) = 2 c^{m+1} (1 + sum a_k c^{-k})  in  R(c,2n-1)
//
// belongs to M_n. At c0 the left side is 0, and by continuity the test holds
// on a neighbourhood. The radius reported here comes from sampling circles
// around c0; it is evidence, not a proof.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "attractor.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "polyroots.hpp"

namespace collinear {

enum class RadiusKind { Sampled, None };

inline const char* to_string(RadiusKind k) noexcept {
    return k == RadiusKind::Sampled ? "Sampled" : "None";
}

struct CertifyOptions {
    double margin = 1e-9;
    int radius_samples = 64;
    double radius_tol = 1e-12;
    int radius_iterations = 40;
    double radius_min = 1e-9;
    double radius_max = 0.5;
};

struct CertificateChecks {
    bool root_residual_ok = false;
    bool in_X_interior_ok = false;
    bool rect_containment_ok = false;

    bool all() const noexcept { return root_residual_ok && in_X_interior_ok && rect_containment_ok; }
};

struct Certificate {
    Complex c0;
    int n;
    CoeffWord word;
    /// Smallest slack among the constraints defining X_n at c0.
    double x_margin;
    double radius;
    RadiusKind radius_kind;
    CertificateChecks checks;
    double residual;

    bool certified() const noexcept { return checks.all(); }
};

/// 2 c q(c) lies in the closed rectangle R(c, 2n-1).
inline bool rect_containment(const CoeffWord& word, Complex c) {
    if (!(std::abs(c) > 1.0)) return false;
    const auto rect = cover_rect(ParameterPoint(c), 2 * word.n() - 1);
    return rect.contains(2.0 * c * evaluate(word, c).value);
}

/// Both X_n membership and the rectangle test hold at c.
inline bool neighbourhood_point_ok(const CoeffWord& word, Complex c) {
    return in_X(c, word.n()) && rect_containment(word, c);
}

namespace detail {

/// Unit directions 2*pi*k/samples, mirrored so that the set is closed under
/// conjugation bit for bit.
inline std::vector<Complex> circle_directions(int samples) {
    std::vector<Complex> dirs(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const int j = std::min(k, samples - k);
        const Complex d = std::polar(1.0, 2 * std::numbers::pi * j / samples);
        dirs[static_cast<std::size_t>(k)] = k == j ? d : std::conj(d);
    }
    return dirs;
}

inline bool circles_pass(const CoeffWord& word, Complex c0, double r,
                         const std::vector<Complex>& dirs) {
    for (Complex dir : dirs) {
        if (!neighbourhood_point_ok(word, c0 + r * dir)) return false;
        if (!neighbourhood_point_ok(word, c0 + 0.5 * r * dir)) return false;
    }
    return true;
}

}  // namespace detail

inline Certificate certify_interior(Complex c0, int n, const CoeffWord& word,
                                    const CertifyOptions& opts = {}) {
    const CoeffWord w(n, word.coeffs());  // rejects digits outside D_n
    ParameterPoint start(c0);

    const auto refined = newton_root(w.coeffs(), start.value());
    if (!refined) throw NumericalError("Newton refinement diverged for word " + w.to_string());

    Certificate cert{*refined, n, w, 0.0, 0.0, RadiusKind::None, {}, 0.0};
    const auto value = evaluate(w, cert.c0);
    cert.residual = std::abs(value.value);
    const bool stayed = std::abs(cert.c0 - c0) <= 1e-6 * std::max(1.0, std::abs(c0));
    cert.checks.root_residual_ok =
        stayed && std::abs(cert.c0) > 1.0 && cert.residual <= 1e-13 * value.magnitude;
    cert.x_margin = x_slack(cert.c0, n);
    cert.checks.in_X_interior_ok = in_X_interior(cert.c0, n, opts.margin);
    cert.checks.rect_containment_ok = rect_containment(w, cert.c0);
    if (!cert.certified()) return cert;

    const auto dirs = detail::circle_directions(std::max(1, opts.radius_samples));
    if (!detail::circles_pass(w, cert.c0, opts.radius_min, dirs)) return cert;
    double lo = opts.radius_min;
    double hi = opts.radius_max;
    if (detail::circles_pass(w, cert.c0, hi, dirs)) {
        lo = hi;
    } else {
        for (int it = 0; it < opts.radius_iterations && hi - lo > opts.radius_tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            (detail::circles_pass(w, cert.c0, mid, dirs) ? lo : hi) = mid;
        }
    }
    cert.radius = lo;
    cert.radius_kind = RadiusKind::Sampled;
    return cert;
}

/// Certifies every sampled root of M^_n lying in the interior of X_n.
inline std::vector<Certificate> certify_batch(int n, int max_degree, std::uint64_t budget,
                                              std::uint64_t seed, const CertifyOptions& opts = {},
                                              unsigned threads = 1) {
    const auto pts = mhat_sample(n, max_degree, budget, seed, threads);
    std::vector<const RootPoint*> inside;
    for (const auto& p : pts)
        if (in_X_interior(p.z, n, opts.margin)) inside.push_back(&p);

    std::vector<std::optional<Certificate>> out(inside.size());
    parallel_for(inside.size(), threads, [&](std::size_t i) {
        out[i] = certify_interior(inside[i]->z, n, inside[i]->word, opts);
    });
    std::vector<Certificate> certs;
    certs.reserve(out.size());
    for (auto& c : out) certs.push_back(std::move(*c));
    return certs;
}

}  // namespace collinear

#endif  // COLLINEAR_CERTIFY_HPP

#ifndef COLLINEAR_RASTER_HPP
#define COLLINEAR_RASTER_HPP

// Rendering of loci, attractors and root clouds into RGB buffers, plus PPM
// and PNG writers.

#include <png.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "attractor.hpp"
#include "connectivity.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "polyroots.hpp"

namespace collinear {

struct Rgb {
    std::uint8_t r, g, b;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace palette {
inline constexpr Rgb kOutsideDomain{211, 211, 211};
inline constexpr Rgb kDisconnected{255, 255, 255};
inline constexpr Rgb kConnected{0, 0, 0};
inline constexpr Rgb kUndetermined{128, 128, 128};

inline constexpr Rgb kUnitDisk{0, 0, 255};
inline constexpr Rgb kXRegion{220, 0, 0};
inline constexpr Rgb kOuterDisk{0, 160, 0};
inline constexpr Rgb kAnnulus{255, 140, 0};
inline constexpr Rgb kRealAxis{200, 0, 200};
}  // namespace palette

inline Rgb color_of(PixelCode p) noexcept {
    switch (p) {
        case PixelCode::OutsideDomain: return palette::kOutsideDomain;
        case PixelCode::Disconnected: return palette::kDisconnected;
        case PixelCode::ConnectedWitness: return palette::kConnected;
        case PixelCode::Undetermined: return palette::kUndetermined;
    }
    return palette::kUndetermined;
}

/// RGB image, row-major, row 0 at the top.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> rgb;

    Image() = default;
    Image(std::uint32_t w, std::uint32_t h, Rgb fill = palette::kDisconnected)
        : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
        for (std::size_t k = 0; k < rgb.size(); k += 3) {
            rgb[k] = fill.r;
            rgb[k + 1] = fill.g;
            rgb[k + 2] = fill.b;
        }
    }

    Rgb at(std::uint32_t i, std::uint32_t j) const {
        const auto k = (static_cast<std::size_t>(j) * width + i) * 3;
        return {rgb[k], rgb[k + 1], rgb[k + 2]};
    }
    void set(std::uint32_t i, std::uint32_t j, Rgb c) {
        const auto k = (static_cast<std::size_t>(j) * width + i) * 3;
        rgb[k] = c.r;
        rgb[k + 1] = c.g;
        rgb[k + 2] = c.b;
    }
    friend bool operator==(const Image&, const Image&) = default;
};

/// Image rotated by 180 degrees: the picture of the negated window.
inline Image flipped(const Image& img) {
    Image out(img.width, img.height);
    for (std::uint32_t j = 0; j < img.height; ++j)
        for (std::uint32_t i = 0; i < img.width; ++i)
            out.set(img.width - 1 - i, img.height - 1 - j, img.at(i, j));
    return out;
}

enum class RenderKind { Locus, Attractor, MhatCloud };
enum class Overlay { UnitDisk, XRegion, OuterDisk, Annulus, RealAxis };

struct RasterJob {
    RenderKind kind = RenderKind::Locus;
    int n = 2;
    /// Defaults: [-(n+0.5), n+0.5]^2 for loci and root clouds, the square
    /// of half-side hull_radius for attractors.
    std::optional<Window> window;
    std::uint32_t width = 600;
    std::uint32_t height = 600;
    /// Locus: max search depth. Attractor: digit depth, chosen from the
    /// pixel size when absent.
    std::optional<int> depth;
    /// MhatCloud: largest polynomial degree.
    int degree = 8;
    /// Attractor parameter.
    Complex c{0.0, 0.0};
    std::set<Overlay> overlays;
    bool rigorous = false;
    unsigned threads = 1;
    /// Work cap: enumerated points for attractors, sampled words per degree
    /// for root clouds, pixel-depth products for loci.
    std::uint64_t budget = kDefaultPointBudget;
    std::uint64_t seed = 0;
};

inline constexpr int kDefaultLocusDepth = 24;

inline Window default_window(const RasterJob& job) {
    if (job.window) return *job.window;
    const double r = job.kind == RenderKind::Attractor ? hull_radius(job.c, job.n) : job.n + 0.5;
    return {-r, r, -r, r};
}

/// Smallest depth whose tail radius is at most one pixel, deepened while
/// the cloud has fewer than four points per pixel and the budget allows.
inline int auto_attractor_depth(const ParameterPoint& c, int n, const Window& w,
                                std::uint32_t width, std::uint32_t height,
                                std::uint64_t budget = kDefaultPointBudget) {
    const double pixel = std::min((w.re_max - w.re_min) / width, (w.im_max - w.im_min) / height);
    const auto nn = static_cast<std::uint64_t>(n);
    const std::uint64_t dense = 4ull * width * height;
    int d = 0;
    while (tail_radius(c, n, d) > pixel && d < 200) ++d;
    while (saturating_pow(nn, d + 1) < dense && saturating_pow(nn, d + 2) <= budget) ++d;
    return d;
}

namespace detail {

/// Pixel containing z, if any.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> pixel_of(const Window& w,
                                                                       std::uint32_t width,
                                                                       std::uint32_t height,
                                                                       Complex z) {
    const double fx = (z.real() - w.re_min) / (w.re_max - w.re_min) * width;
    const double fy = (w.im_max - z.imag()) / (w.im_max - w.im_min) * height;
    if (!(fx >= 0 && fy >= 0 && fx < width && fy < height)) return std::nullopt;
    return std::pair{static_cast<std::uint32_t>(fx), static_cast<std::uint32_t>(fy)};
}

/// Distance from z to the curve, or +inf when z is away from it.
inline double overlay_distance(Overlay o, Complex z, int n) {
    const double lens = std::sqrt(2.0 * n);
    switch (o) {
        case Overlay::UnitDisk: return std::abs(std::abs(z) - 1.0);
        case Overlay::OuterDisk: return std::abs(std::abs(z) - (1.0 + std::sqrt(n - 1.0)));
        case Overlay::Annulus: return std::abs(std::abs(z) - std::sqrt(static_cast<double>(n)));
        case Overlay::RealAxis: return std::abs(z.imag());
        case Overlay::XRegion: {
            // boundary of the lens |z-1| <= sqrt(2n), |z+1| <= sqrt(2n)
            const double dp = std::abs(z - 1.0) - lens;
            const double dm = std::abs(z + 1.0) - lens;
            double best = std::numeric_limits<double>::infinity();
            if (dm <= 0) best = std::min(best, std::abs(dp));
            if (dp <= 0) best = std::min(best, std::abs(dm));
            return best;
        }
    }
    return std::numeric_limits<double>::infinity();
}

inline Rgb overlay_color(Overlay o) noexcept {
    switch (o) {
        case Overlay::UnitDisk: return palette::kUnitDisk;
        case Overlay::XRegion: return palette::kXRegion;
        case Overlay::OuterDisk: return palette::kOuterDisk;
        case Overlay::Annulus: return palette::kAnnulus;
        case Overlay::RealAxis: return palette::kRealAxis;
    }
    return palette::kUndetermined;
}

inline void draw_overlays(Image& img, const Window& w, int n, const std::set<Overlay>& overlays) {
    if (overlays.empty()) return;
    const double half = 0.5 * std::max((w.re_max - w.re_min) / img.width,
                                       (w.im_max - w.im_min) / img.height);
    for (std::uint32_t j = 0; j < img.height; ++j)
        for (std::uint32_t i = 0; i < img.width; ++i) {
            const Complex z = w.pixel_center(i, j, img.width, img.height);
            for (Overlay o : overlays)  // later overlays win
                if (overlay_distance(o, z, n) <= half) img.set(i, j, overlay_color(o));
        }
}

inline Image render_locus(const RasterJob& job, const Window& w) {
    const int depth = job.depth.value_or(kDefaultLocusDepth);
    const auto work = static_cast<double>(job.width) * job.height * depth;
    if (work > static_cast<double>(job.budget))
        throw ResourceError("locus render needs " + std::to_string(work) +
                            " pixel-levels, over the budget of " + std::to_string(job.budget));
    const auto opts =
        job.rigorous ? ClassifyOptions::rigorous(depth) : ClassifyOptions::rendering(depth);
    const auto grid =
        classify_grid(job.n, w, job.width, job.height, opts, GridOptions{job.threads, true});
    Image img(job.width, job.height);
    for (std::uint32_t j = 0; j < job.height; ++j)
        for (std::uint32_t i = 0; i < job.width; ++i) img.set(i, j, color_of(grid.at(i, j)));
    return img;
}

inline Image splat(std::uint32_t width, std::uint32_t height,
                   const std::vector<std::vector<std::uint8_t>>& masks) {
    Image img(width, height);
    for (std::size_t k = 0; k < img.rgb.size() / 3; ++k) {
        bool hit = false;
        for (const auto& m : masks) hit = hit || m[k] != 0;
        if (hit) img.set(static_cast<std::uint32_t>(k % width), static_cast<std::uint32_t>(k / width),
                         palette::kConnected);
    }
    return img;
}

inline Image render_attractor(const RasterJob& job, const Window& w) {
    const ParameterPoint c(job.c);
    const int depth = job.depth.value_or(auto_attractor_depth(c, job.n, w, job.width, job.height, job.budget));
    if (depth < 0) throw DomainError("depth must be >= 0");
    require_point_budget(job.n, depth, job.budget);

    const DigitSet alphabet(DigitKind::A, job.n);
    const auto inv_powers = inverse_powers(c, depth);
    const unsigned workers = resolve_threads(job.threads);
    std::vector<std::vector<std::uint8_t>> masks(
        workers, std::vector<std::uint8_t>(static_cast<std::size_t>(job.width) * job.height));
    parallel_for_workers(alphabet.size(), workers, [&](unsigned wk, std::size_t i) {
        auto& mask = masks[wk];
        enumerate_subtree(inv_powers, alphabet, depth, alphabet.values()[i], [&](Complex z) {
            if (auto p = pixel_of(w, job.width, job.height, z))
                mask[static_cast<std::size_t>(p->second) * job.width + p->first] = 1;
        });
    });
    return splat(job.width, job.height, masks);
}

inline Image render_mhat(const RasterJob& job, const Window& w) {
    const auto pts = mhat_sample(job.n, job.degree, job.budget, job.seed, job.threads);
    std::vector<std::vector<std::uint8_t>> masks(
        1, std::vector<std::uint8_t>(static_cast<std::size_t>(job.width) * job.height));
    for (const auto& p : pts)
        if (auto px = pixel_of(w, job.width, job.height, p.z))
            masks[0][static_cast<std::size_t>(px->second) * job.width + px->first] = 1;
    return splat(job.width, job.height, masks);
}

}  // namespace detail

inline Image render(const RasterJob& job) {
    require_alphabet(job.n);
    if (job.width == 0 || job.height == 0) throw DomainError("image size must be at least 1x1");
    const Window w = default_window(job);
    w.validate();
    Image img;
    switch (job.kind) {
        case RenderKind::Locus: img = detail::render_locus(job, w); break;
        case RenderKind::Attractor: img = detail::render_attractor(job, w); break;
        case RenderKind::MhatCloud: img = detail::render_mhat(job, w); break;
    }
    detail::draw_overlays(img, w, job.n, job.overlays);
    return img;
}

// ---------------------------------------------------------------------------
// Writers

enum class ImageFormat { Ppm, Png };

inline std::string encode_ppm(const Image& img) {
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
    return out;
}

inline void write_ppm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    const auto bytes = encode_ppm(img);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("failed writing " + path);
}

inline void write_png(const Image& img, const std::string& path) {
    png_image desc{};
    desc.version = PNG_IMAGE_VERSION;
    desc.width = img.width;
    desc.height = img.height;
    desc.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&desc, path.c_str(), 0, img.rgb.data(),
                                 static_cast<png_int_32>(img.width * 3), nullptr))
        throw IoError("failed writing " + path + ": " + desc.message);
}

inline void write_image(const Image& img, const std::string& path, ImageFormat format) {
    if (format == ImageFormat::Ppm) write_ppm(img, path);
    else write_png(img, path);
}

}  // namespace collinear

#endif  // COLLINEAR_RASTER_HPP

#ifndef COLLINEAR_CONNECTIVITY_HPP
#define COLLINEAR_CONNECTIVITY_HPP

// Semi-decision procedure for membership in the connectedness locus M_n.
//
// c is in M_n iff 1 + sum_{k>=1} a_k c^{-k} = 0 for some a_k in D_n. Writing
// w_m = c^m (1 + sum_{k<=m} a_k c^{-k}) gives the recursion
//
//   w_0 = 1,   w_m = c * w_{m-1} + a_m,
//
// and a prefix can be continued only while |w_m| <= rho = (n-1)/(|c|-1), the
// largest modulus of a tail -sum_{j>=1} a_{m+j} c^{-j}. If every branch of
// the pruned tree dies, c is not in M_n. If some w_m vanishes, the prefix
// extended by zeros is a root of the series and c is in M_n.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "attractor.hpp"
#include "detail/visited_set.hpp"
#include "digits.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace collinear {

enum class SearchMode { Rigorous, Fast };
enum class VerdictTag { Disconnected, ConnectedWitness, Undetermined };

inline const char* to_string(SearchMode m) noexcept {
    return m == SearchMode::Rigorous ? "rigorous" : "fast";
}

inline const char* to_string(VerdictTag t) noexcept {
    switch (t) {
        case VerdictTag::Disconnected: return "Disconnected";
        case VerdictTag::ConnectedWitness: return "ConnectedWitness";
        case VerdictTag::Undetermined: return "Undetermined";
    }
    return "?";
}

/// Relative slack added to the pruning radius.
inline const double kPruneSafety = std::ldexp(1.0, -40);

struct ClassifyOptions {
    int max_depth = 64;
    SearchMode mode = SearchMode::Fast;
    /// A state with |w_m| <= eps_root is accepted as a witness.
    double eps_root = 1e-9;
    /// Merge-cell pitch for fast mode; 0 selects rho / 1024.
    double grid_merge = 0.0;
    /// Breadth-first levels are expanded while the frontier is at most this
    /// large, so short witnesses are found before the depth-first phase.
    std::size_t frontier_cap = 1u << 14;
    /// Expanded search nodes before giving up with Undetermined.
    std::uint64_t node_budget = 1u << 20;

    static ClassifyOptions rigorous(int max_depth = 64) {
        ClassifyOptions o;
        o.max_depth = max_depth;
        o.mode = SearchMode::Rigorous;
        return o;
    }
    /// Defaults used when rasterising the locus.
    static ClassifyOptions rendering(int max_depth = 28) {
        ClassifyOptions o;
        o.max_depth = max_depth;
        o.mode = SearchMode::Fast;
        o.frontier_cap = 64;
        o.node_budget = 1u << 18;
        return o;
    }
};

/// Every branch died; no state survives at `depth`.
struct Extinction {
    int depth;
};

/// Digits a_1..a_m with |w_m| = residual <= eps_root.
struct Witness {
    std::vector<int> digits;
    double residual;
    /// |1 + sum a_k c^{-k}| = residual / |c|^m.
    double series_residual;
};

/// The search stopped with live states: either max_depth was reached or the
/// node budget ran out.
struct Survivors {
    std::uint64_t count;
    int depth;
    bool budget_exhausted;
};

class Verdict {
public:
    using Evidence = std::variant<Extinction, Witness, Survivors>;

    Verdict(SearchMode mode, Evidence evidence) : mode_(mode), evidence_(std::move(evidence)) {}

    VerdictTag tag() const noexcept {
        switch (evidence_.index()) {
            case 0: return VerdictTag::Disconnected;
            case 1: return VerdictTag::ConnectedWitness;
            default: return VerdictTag::Undetermined;
        }
    }
    SearchMode mode() const noexcept { return mode_; }
    const Evidence& evidence() const noexcept { return evidence_; }

    bool disconnected() const noexcept { return tag() == VerdictTag::Disconnected; }
    bool connected() const noexcept { return tag() == VerdictTag::ConnectedWitness; }

    const Extinction* extinction() const noexcept { return std::get_if<Extinction>(&evidence_); }
    const Witness* witness() const noexcept { return std::get_if<Witness>(&evidence_); }
    const Survivors* survivors() const noexcept { return std::get_if<Survivors>(&evidence_); }

private:
    SearchMode mode_;
    Evidence evidence_;
};

/// rho(c,n) = (n-1)/(|c|-1).
inline double tail_bound(const ParameterPoint& c, int n) {
    return (n - 1) / (c.modulus() - 1.0);
}

/// Reusable search workspace. Not thread-safe; use one per worker.
class Classifier {
public:
    explicit Classifier(ClassifyOptions opts = {}) : opts_(opts) { validate(opts_); }

    const ClassifyOptions& options() const noexcept { return opts_; }

    static void validate(const ClassifyOptions& o) {
        if (o.max_depth < 1) throw DomainError("max_depth must be >= 1");
        if (!(o.eps_root >= 0) || !std::isfinite(o.eps_root))
            throw DomainError("eps_root must be finite and >= 0");
        if (!(o.grid_merge >= 0) || !std::isfinite(o.grid_merge))
            throw DomainError("grid_merge must be finite and >= 0");
        if (o.node_budget == 0) throw DomainError("node_budget must be positive");
    }

    Verdict classify(const ParameterPoint& c, int n) {
        require_alphabet(n);
        setup(c, n);
        const double limit0 = limit(0);
        if (1.0 > limit0) return verdict(Extinction{0});

        levels_.clear();
        levels_.push_back({Node{1.0, 0.0, -1, 0}});
        visited_.clear();
        insert_visited(0, 1.0, 0.0);
        expanded_ = 0;

        // breadth-first phase
        for (int m = 1; m <= opts_.max_depth; ++m) {
            const auto& frontier = levels_[static_cast<std::size_t>(m - 1)];
            if (frontier.size() > opts_.frontier_cap) return depth_first(m - 1);
            std::vector<Node> next;
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                if (++expanded_ > opts_.node_budget)
                    return verdict(Survivors{frontier.size() - i + next.size(), m - 1, true});
                const Node parent = frontier[i];
                const int count = children(parent.x, parent.y, m);
                const double X = cr_ * parent.x - ci_ * parent.y;
                const double Y = cr_ * parent.y + ci_ * parent.x;
                for (int k = 0; k < count; ++k) {
                    const int a = order_[static_cast<std::size_t>(k)];
                    const double x = X + a;
                    if (!insert_visited(m, x, Y)) continue;
                    if (x * x + Y * Y <= eps2_) {
                        auto digits = prefix(m - 1, i);
                        digits.push_back(a);
                        return make_witness(std::move(digits), x, Y);
                    }
                    next.push_back(Node{x, Y, static_cast<std::int32_t>(i), a});
                }
            }
            if (next.empty()) return verdict(Extinction{m});
            levels_.push_back(std::move(next));
            if (m == opts_.max_depth)
                return verdict(Survivors{levels_.back().size(), m, false});
        }
        return verdict(Survivors{levels_.back().size(), opts_.max_depth, false});
    }

private:
    struct Node {
        double x;
        double y;
        std::int32_t parent;
        std::int32_t digit;
    };

    struct Entry {
        double x;
        double y;
        std::int32_t depth;
        std::int32_t digit;
        std::uint32_t root;
    };

    Verdict verdict(Verdict::Evidence e) const { return Verdict(opts_.mode, std::move(e)); }

    void setup(const ParameterPoint& c, int n) {
        n_ = n;
        cr_ = c.re();
        ci_ = c.im();
        modulus_ = c.modulus();
        const double rho = tail_bound(c, n);
        bound_ = rho * (1.0 + kPruneSafety);
        eps2_ = opts_.eps_root * opts_.eps_root;
        pitch_ = opts_.grid_merge > 0 ? opts_.grid_merge : rho / 1024.0;
        inv_pitch_ = 1.0 / pitch_;

        // Rigorous mode widens the radius at depth m by a bound e_m on the
        // accumulated rounding error of the computed state:
        //   e_m = |c| e_{m-1} + 6u (|c| (bound + e_{m-1}) + n).
        limits_.assign(static_cast<std::size_t>(opts_.max_depth) + 1, bound_);
        if (opts_.mode == SearchMode::Rigorous) {
            constexpr double u = std::numeric_limits<double>::epsilon() / 2;
            double e = 0.0;
            for (std::size_t m = 1; m < limits_.size(); ++m) {
                e = modulus_ * e + 6 * u * (modulus_ * (bound_ + e) + n);
                limits_[m] = bound_ + e;
            }
        }
    }

    double limit(int depth) const noexcept { return limits_[static_cast<std::size_t>(depth)]; }

    /// Digits whose child c*w + a survives at `depth`, best first: increasing
    /// |c*w + a|, ties to the smaller digit.
    int children(double wx, double wy, int depth) {
        const double X = cr_ * wx - ci_ * wy;
        const double Y = cr_ * wy + ci_ * wx;
        const double lim = limit(depth);
        const double lim2 = lim * lim;
        const double rem = lim2 - Y * Y;
        if (rem < 0) return 0;
        const double s = std::sqrt(rem);
        const double lo_f = std::max(static_cast<double>(1 - n_), std::ceil(-X - s) - 1.0);
        const double hi_f = std::min(static_cast<double>(n_ - 1), std::floor(-X + s) + 1.0);
        if (lo_f > hi_f) return 0;
        const int lo = static_cast<int>(lo_f);
        const int hi = static_cast<int>(hi_f);
        const int start = static_cast<int>(std::clamp(std::nearbyint(-X), lo_f, hi_f));

        order_.resize(static_cast<std::size_t>(2 * n_ - 1));
        int count = 0;
        int left = start - 1;
        int right = start;
        auto accept = [&](int a) {
            const double x = X + a;
            if (x * x + Y * Y <= lim2) order_[static_cast<std::size_t>(count++)] = a;
        };
        while (left >= lo || right <= hi) {
            if (right > hi) {
                accept(left--);
            } else if (left < lo) {
                accept(right++);
            } else if (std::abs(X + left) <= std::abs(X + right)) {
                accept(left--);
            } else {
                accept(right++);
            }
        }
        return count;
    }

    bool insert_visited(int depth, double x, double y) {
        if (opts_.mode == SearchMode::Rigorous)
            return visited_.insert(depth, std::bit_cast<std::int64_t>(x + 0.0),
                                   std::bit_cast<std::int64_t>(y + 0.0));
        return visited_.insert(depth, std::llround(x * inv_pitch_), std::llround(y * inv_pitch_));
    }

    /// Digits a_1..a_depth leading to levels_[depth][index].
    std::vector<int> prefix(int depth, std::size_t index) const {
        std::vector<int> digits(static_cast<std::size_t>(depth));
        for (int m = depth; m >= 1; --m) {
            const Node& node = levels_[static_cast<std::size_t>(m)][index];
            digits[static_cast<std::size_t>(m - 1)] = node.digit;
            index = static_cast<std::size_t>(node.parent);
        }
        return digits;
    }

    Verdict make_witness(std::vector<int> digits, double x, double y) const {
        const double residual = std::hypot(x, y);
        const double series = residual * std::pow(modulus_, -static_cast<double>(digits.size()));
        return verdict(Witness{std::move(digits), residual, series});
    }

    Verdict depth_first(int base_depth) {
        const auto& frontier = levels_[static_cast<std::size_t>(base_depth)];
        stack_.clear();
        for (std::size_t i = frontier.size(); i-- > 0;)
            stack_.push_back(Entry{frontier[i].x, frontier[i].y, base_depth, frontier[i].digit,
                                   static_cast<std::uint32_t>(i)});
        path_.assign(static_cast<std::size_t>(opts_.max_depth) + 2, 0);
        std::uint32_t root = 0;
        int deepest = base_depth;

        while (!stack_.empty()) {
            const Entry e = stack_.back();
            stack_.pop_back();
            if (++expanded_ > opts_.node_budget)
                return verdict(Survivors{stack_.size() + 1, deepest, true});
            if (e.depth == base_depth) root = e.root;
            else path_[static_cast<std::size_t>(e.depth)] = e.digit;
            deepest = std::max(deepest, static_cast<int>(e.depth));
            if (e.depth >= opts_.max_depth)
                return verdict(Survivors{stack_.size() + 1, e.depth, false});

            const int child_depth = e.depth + 1;
            const int count = children(e.x, e.y, child_depth);
            const double X = cr_ * e.x - ci_ * e.y;
            const double Y = cr_ * e.y + ci_ * e.x;
            const std::size_t mark = stack_.size();
            for (int k = 0; k < count; ++k) {
                const int a = order_[static_cast<std::size_t>(k)];
                const double x = X + a;
                if (!insert_visited(child_depth, x, Y)) continue;
                if (x * x + Y * Y <= eps2_) {
                    auto digits = prefix(base_depth, root);
                    digits.insert(digits.end(), path_.begin() + base_depth + 1,
                                  path_.begin() + e.depth + 1);
                    digits.push_back(a);
                    return make_witness(std::move(digits), x, Y);
                }
                stack_.push_back(Entry{x, Y, child_depth, a, root});
            }
            // best child must be popped first
            std::reverse(stack_.begin() + static_cast<std::ptrdiff_t>(mark), stack_.end());
        }
        return verdict(Extinction{deepest + 1});
    }

    ClassifyOptions opts_;
    int n_ = 2;
    double cr_ = 0, ci_ = 0, modulus_ = 0;
    double bound_ = 0, eps2_ = 0, pitch_ = 1, inv_pitch_ = 1;
    std::vector<double> limits_;
    std::vector<std::vector<Node>> levels_;
    std::vector<Entry> stack_;
    std::vector<int> path_;
    std::vector<int> order_;
    detail::VisitedSet visited_;
    std::uint64_t expanded_ = 0;
};

inline Verdict classify(const ParameterPoint& c, int n, const ClassifyOptions& opts = {}) {
    return Classifier(opts).classify(c, n);
}
inline Verdict classify(Complex c, int n, const ClassifyOptions& opts = {}) {
    return classify(ParameterPoint(c), n, opts);
}

// ---------------------------------------------------------------------------
// Verdict grids

/// Axis-aligned rectangle in the parameter plane.
struct Window {
    double re_min;
    double re_max;
    double im_min;
    double im_max;

    friend bool operator==(const Window&, const Window&) = default;

    void validate() const {
        for (double v : {re_min, re_max, im_min, im_max})
            if (!std::isfinite(v)) throw DomainError("window bounds must be finite");
        if (!(re_max > re_min) || !(im_max > im_min))
            throw DomainError("window must have positive area");
    }

    bool re_symmetric() const noexcept { return re_min == -re_max; }
    bool im_symmetric() const noexcept { return im_min == -im_max; }

    /// Center of column i of `width`; exactly negated for the mirrored window.
    double column_center(std::uint32_t i, std::uint32_t width) const noexcept {
        const double w = width;
        return (re_min * (w - i - 0.5) + re_max * (i + 0.5)) / w;
    }
    /// Center of row j of `height`; row 0 is the top (largest imaginary part).
    double row_center(std::uint32_t j, std::uint32_t height) const noexcept {
        const double h = height;
        return (im_max * (h - j - 0.5) + im_min * (j + 0.5)) / h;
    }
    Complex pixel_center(std::uint32_t i, std::uint32_t j, std::uint32_t width,
                         std::uint32_t height) const noexcept {
        return {column_center(i, width), row_center(j, height)};
    }
};

enum class PixelCode : std::uint8_t {
    OutsideDomain = 0,
    Disconnected = 1,
    ConnectedWitness = 2,
    Undetermined = 3,
};

inline PixelCode to_pixel(VerdictTag t) noexcept {
    switch (t) {
        case VerdictTag::Disconnected: return PixelCode::Disconnected;
        case VerdictTag::ConnectedWitness: return PixelCode::ConnectedWitness;
        case VerdictTag::Undetermined: return PixelCode::Undetermined;
    }
    return PixelCode::Undetermined;
}

struct VerdictGrid {
    Window window;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t n = 0;
    std::uint32_t max_depth = 0;
    std::vector<PixelCode> cells;  // row-major, row 0 at the top

    PixelCode at(std::uint32_t i, std::uint32_t j) const {
        return cells[static_cast<std::size_t>(j) * width + i];
    }
    friend bool operator==(const VerdictGrid&, const VerdictGrid&) = default;
};

struct GridOptions {
    unsigned threads = 1;
    /// Classify only one representative per orbit of the conjugation and
    /// negation symmetries when the window allows it, then mirror.
    bool exploit_symmetry = false;
};

/// Per-pixel verdict at pixel centers; |c| <= 1 is OutsideDomain.
inline VerdictGrid classify_grid(int n, const Window& window, std::uint32_t width,
                                 std::uint32_t height, const ClassifyOptions& opts,
                                 GridOptions grid = {}) {
    require_alphabet(n);
    window.validate();
    if (width == 0 || height == 0) throw DomainError("grid resolution must be at least 1x1");
    Classifier::validate(opts);

    VerdictGrid out{window, width, height, static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(opts.max_depth),
                    std::vector<PixelCode>(static_cast<std::size_t>(width) * height)};

    const bool both = grid.exploit_symmetry && window.re_symmetric() && window.im_symmetric();
    const bool conj_only = grid.exploit_symmetry && !both && window.im_symmetric();
    // canonical representatives: right half when both symmetries apply,
    // upper half whenever the window is symmetric about the real axis
    const std::uint32_t i_begin = both ? width / 2 : 0;
    const std::uint32_t j_end = (both || conj_only) ? (height + 1) / 2 : height;

    std::vector<std::uint32_t> rows(j_end);
    for (std::uint32_t j = 0; j < j_end; ++j) rows[j] = j;

    const unsigned workers = resolve_threads(grid.threads);
    std::vector<Classifier> pool(workers, Classifier(opts));
    parallel_for_workers(rows.size(), workers, [&](unsigned w, std::size_t r) {
        const std::uint32_t j = rows[r];
        for (std::uint32_t i = i_begin; i < width; ++i) {
            const Complex c = window.pixel_center(i, j, width, height);
            PixelCode code = PixelCode::OutsideDomain;
            if (std::abs(c) > 1.0) code = to_pixel(pool[w].classify(ParameterPoint(c), n).tag());
            out.cells[static_cast<std::size_t>(j) * width + i] = code;
        }
    });

    if (both || conj_only) {
        for (std::uint32_t j = 0; j < height; ++j) {
            const std::uint32_t jc = std::min(j, height - 1 - j);
            for (std::uint32_t i = 0; i < width; ++i) {
                const std::uint32_t ic = both ? std::max(i, width - 1 - i) : i;
                if (ic == i && jc == j) continue;
                out.cells[static_cast<std::size_t>(j) * width + i] =
                    out.cells[static_cast<std::size_t>(jc) * width + ic];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CLXG grid files (little-endian):
//   "CLXG" u32 width u32 height f64 re_min f64 re_max f64 im_min f64 im_max
//   u32 n u32 max_depth, then width*height bytes of PixelCode, row-major.

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_f64(std::ostream& out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    put_u32(out, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoError("truncated CLXG header");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

inline double get_f64(std::istream& in) {
    const std::uint64_t lo = get_u32(in);
    const std::uint64_t hi = get_u32(in);
    return std::bit_cast<double>(lo | hi << 32);
}

}  // namespace detail

inline constexpr std::size_t kClxgHeaderSize = 4 + 4 + 4 + 4 * 8 + 4 + 4;

inline void write_clxg(std::ostream& out, const VerdictGrid& g) {
    out.write("CLXG", 4);
    detail::put_u32(out, g.width);
    detail::put_u32(out, g.height);
    detail::put_f64(out, g.window.re_min);
    detail::put_f64(out, g.window.re_max);
    detail::put_f64(out, g.window.im_min);
    detail::put_f64(out, g.window.im_max);
    detail::put_u32(out, g.n);
    detail::put_u32(out, g.max_depth);
    out.write(reinterpret_cast<const char*>(g.cells.data()),
              static_cast<std::streamsize>(g.cells.size()));
    if (!out) throw IoError("failed writing CLXG grid");
}

inline VerdictGrid read_clxg(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "CLXG", 4) != 0)
        throw IoError("not a CLXG grid file");
    VerdictGrid g;
    g.width = detail::get_u32(in);
    g.height = detail::get_u32(in);
    g.window.re_min = detail::get_f64(in);
    g.window.re_max = detail::get_f64(in);
    g.window.im_min = detail::get_f64(in);
    g.window.im_max = detail::get_f64(in);
    g.n = detail::get_u32(in);
    g.max_depth = detail::get_u32(in);
    g.cells.resize(static_cast<std::size_t>(g.width) * g.height);
    if (!in.read(reinterpret_cast<char*>(g.cells.data()),
                 static_cast<std::streamsize>(g.cells.size())))
        throw IoError("truncated CLXG pixel data");
    for (auto p : g.cells)
        if (static_cast<std::uint8_t>(p) > 3) throw IoError("invalid CLXG pixel code");
    return g;
}

}  // namespace collinear

#endif  // COLLINEAR_CONNECTIVITY_HPP

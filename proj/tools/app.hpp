#ifndef COLLINEAR_TOOLS_APP_HPP
#define COLLINEAR_TOOLS_APP_HPP

// Command-line front end. run() is separate from main() so tests can drive
// it with string streams.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "collinear/collinear.hpp"
#include "collinear/json_io.hpp"

namespace collinear::cli {

enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kDomain = 2,
    kResource = 3,
    kNumerical = 4,
};

namespace detail {

inline std::vector<double> parse_doubles(const std::string& text, const std::string& flag,
                                         std::size_t count) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || end != part.data() + part.size() || !std::isfinite(v))
            throw DomainError(flag + ": '" + part + "' is not a finite number");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != count)
        throw DomainError(flag + ": expected " + std::to_string(count) + " comma-separated numbers");
    return out;
}

inline Complex parse_complex(const std::string& text, const std::string& flag) {
    const auto v = parse_doubles(text, flag, 2);
    return {v[0], v[1]};
}

inline ParameterPoint parse_parameter(const std::string& text, const std::string& flag) {
    const Complex c = parse_complex(text, flag);
    if (!(std::abs(c) > 1.0)) throw DomainError(flag + ": |c| must exceed 1");
    return ParameterPoint(c);
}

inline std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int v = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || end != part.data() + part.size())
            throw DomainError(flag + ": '" + part + "' is not an integer");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline Window parse_window(const std::string& text) {
    const auto v = parse_doubles(text, "--window", 4);
    Window w{v[0], v[1], v[2], v[3]};
    try {
        w.validate();
    } catch (const DomainError& e) {
        throw DomainError(std::string("--window: ") + e.what());
    }
    return w;
}

inline std::pair<std::uint32_t, std::uint32_t> parse_size(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw DomainError("--size: expected WxH");
    auto dim = [&](const std::string& s) {
        unsigned v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || end != s.data() + s.size() || v == 0 || v > 1u << 15)
            throw DomainError("--size: dimensions must be integers in [1, 32768]");
        return static_cast<std::uint32_t>(v);
    };
    return {dim(text.substr(0, x)), dim(text.substr(x + 1))};
}

inline Overlay parse_overlay(const std::string& name) {
    if (name == "x") return Overlay::XRegion;
    if (name == "annulus") return Overlay::Annulus;
    if (name == "outer") return Overlay::OuterDisk;
    if (name == "unit") return Overlay::UnitDisk;
    if (name == "real") return Overlay::RealAxis;
    throw DomainError("--overlay: unknown overlay '" + name + "' (x, annulus, outer, unit, real)");
}

inline std::string extension_of(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos) return "";
    return path.substr(dot + 1);
}

/// Explicit --format, else the extension of --out, else `fallback`.
inline std::string resolve_format(const std::string& format, const std::string& out,
                                  const std::string& fallback) {
    if (!format.empty()) return format;
    const auto ext = extension_of(out);
    return ext.empty() ? fallback : ext;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace detail

/// Runs the tool; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Collinear fractals and their connectedness loci"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = all cores, else COLLINEAR_THREADS)")
                            ->check(CLI::Range(0u, 4096u));

    const auto alphabet_range = CLI::Range(2, kMaxAlphabet);
    std::string c_text, format, out_path, window_text, size_text = "600x600", coeffs_text;
    std::vector<std::string> overlays;
    int n = 0;
    std::optional<int> depth;
    int max_depth = 64, grid = 128, max_degree = 0, auto_degree = 0;
    std::uint64_t budget = 100'000, seed = 0;
    bool rigorous = false;
    double tol = 1e-6;

    auto add_c = [&](CLI::App* sub) {
        sub->add_option("--c", c_text, "Parameter as RE,IM")->required();
    };
    auto add_n = [&](CLI::App* sub) {
        sub->add_option("--n", n, "Alphabet parameter n >= 2")->required()->check(alphabet_range);
    };

    auto* attractor = app.add_subcommand("attractor", "Render or dump the attractor E(c,n)");
    add_c(attractor);
    add_n(attractor);
    attractor->add_option("--depth", depth, "Digit depth (default: chosen from the pixel size)")
        ->check(CLI::Range(0, 64));
    attractor->add_option("--out", out_path, "Output path (CSV goes to stdout when absent)");
    attractor->add_option("--format", format, "ppm, png or csv")->check(CLI::IsMember({"ppm", "png", "csv"}));
    attractor->add_option("--size", size_text, "Image size WxH");
    attractor->add_option("--window", window_text, "re_min,re_max,im_min,im_max");
    attractor->add_option("--budget", budget, "Cap on enumerated points")->default_val(kDefaultPointBudget);

    auto* locus = app.add_subcommand("locus", "Render the connectedness locus M_n");
    add_n(locus);
    locus->add_option("--window", window_text, "re_min,re_max,im_min,im_max");
    locus->add_option("--size", size_text, "Image size WxH");
    locus->add_option("--depth", depth, "Search depth")->check(CLI::Range(1, 4096));
    locus->add_flag("--rigorous", rigorous, "Exact state search instead of merged cells");
    locus->add_option("--overlay", overlays, "Overlays: x, annulus, outer, unit, real")->delimiter(',');
    locus->add_option("--out", out_path, "Output path (.ppm, .png or .clxg)")->required();
    locus->add_option("--format", format, "ppm, png or clxg")->check(CLI::IsMember({"ppm", "png", "clxg"}));
    locus->add_option("--budget", budget, "Cap on pixels times depth")->default_val(kDefaultPointBudget);

    auto* classify_cmd = app.add_subcommand("classify", "Classify c against M_n");
    add_c(classify_cmd);
    add_n(classify_cmd);
    classify_cmd->add_option("--max-depth", max_depth, "Search depth")->check(CLI::Range(1, 4096));
    classify_cmd->add_flag("--rigorous", rigorous, "Exact state search instead of merged cells");

    auto* mhat = app.add_subcommand("mhat", "Sample roots of polynomials with coefficients in D_n");
    add_n(mhat);
    mhat->add_option("--max-degree", max_degree, "Largest degree")->required()->check(CLI::Range(1, 64));
    mhat->add_option("--budget", budget, "Words per degree before sampling")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    mhat->add_option("--seed", seed, "Sampling seed");
    mhat->add_option("--out", out_path, "JSON lines output path")->required();

    auto* covering = app.add_subcommand("covering", "Covering predicate and grid check");
    add_c(covering);
    add_n(covering);
    covering->add_option("--grid", grid, "Lattice points per side")->check(CLI::Range(2, 1 << 14));

    auto* certify = app.add_subcommand("certify", "Certify c as an interior point of M_n");
    add_c(certify);
    add_n(certify);
    auto* coeffs_opt = certify->add_option("--coeffs", coeffs_text, "a1,...,am");
    auto* auto_opt = certify->add_option("--auto-degree", auto_degree, "Search words up to this degree")
                         ->check(CLI::Range(1, 32));
    coeffs_opt->excludes(auto_opt);
    certify->add_option("--tol", tol, "Root distance accepted by --auto-degree")->check(CLI::PositiveNumber);

    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form inner and outer bounds");
    add_c(bounds_cmd);
    add_n(bounds_cmd);

    auto* threshold = app.add_subcommand("threshold", "Evaluate 1+sqrt(n-1) < -1+sqrt(2n)");
    add_n(threshold);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kDomain;
    }

    if (threads_opt->count() == 0) {
        if (const char* env = std::getenv("COLLINEAR_THREADS"); env && *env) {
            const std::string text(env);
            const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
            if (ec != std::errc() || end != text.data() + text.size() || threads > 4096) {
                err << "error: COLLINEAR_THREADS: '" << text << "' is not a thread count in [0, 4096]\n";
                return kDomain;
            }
        }
    }

    try {
        if (*attractor) {
            const auto c = parse_parameter(c_text, "--c");
            const auto fmt = resolve_format(format, out_path, "csv");
            if (fmt == "csv") {
                const auto [w, h] = parse_size(size_text);
                RasterJob probe;
                probe.kind = RenderKind::Attractor;
                probe.n = n;
                probe.c = c.value();
                const Window win = window_text.empty() ? default_window(probe) : parse_window(window_text);
                const int d = depth.value_or(auto_attractor_depth(c, n, win, w, h, budget));
                const auto cloud = attractor_points(c, n, d, 0.0, {budget, threads});
                if (out_path.empty()) {
                    write_points_csv(out, cloud.points);
                } else {
                    std::ostringstream buf;
                    write_points_csv(buf, cloud.points);
                    write_file(out_path, buf.str());
                }
                return kOk;
            }
            if (fmt != "ppm" && fmt != "png") throw DomainError("--format: unsupported '" + fmt + "'");
            if (out_path.empty()) throw DomainError("--out: required for image output");
            RasterJob job;
            job.kind = RenderKind::Attractor;
            job.n = n;
            job.c = c.value();
            std::tie(job.width, job.height) = parse_size(size_text);
            if (!window_text.empty()) job.window = parse_window(window_text);
            job.depth = depth;
            job.threads = threads;
            job.budget = budget;
            write_image(render(job), out_path, fmt == "png" ? ImageFormat::Png : ImageFormat::Ppm);
            return kOk;
        }

        if (*locus) {
            RasterJob job;
            job.kind = RenderKind::Locus;
            job.n = n;
            std::tie(job.width, job.height) = parse_size(size_text);
            if (!window_text.empty()) job.window = parse_window(window_text);
            job.depth = depth.value_or(kDefaultLocusDepth);
            job.rigorous = rigorous;
            job.threads = threads;
            job.budget = budget;
            for (const auto& o : overlays) job.overlays.insert(parse_overlay(o));
            const auto fmt = resolve_format(format, out_path, "ppm");
            if (fmt == "clxg") {
                const int d = *job.depth;
                const auto opts = rigorous ? ClassifyOptions::rigorous(d) : ClassifyOptions::rendering(d);
                const auto g = classify_grid(n, default_window(job), job.width, job.height, opts,
                                             GridOptions{threads, true});
                std::ostringstream buf;
                write_clxg(buf, g);
                write_file(out_path, buf.str());
                return kOk;
            }
            if (fmt != "ppm" && fmt != "png") throw DomainError("--format: unsupported '" + fmt + "'");
            write_image(render(job), out_path, fmt == "png" ? ImageFormat::Png : ImageFormat::Ppm);
            return kOk;
        }

        if (*classify_cmd) {
            const auto c = parse_parameter(c_text, "--c");
            const auto opts =
                rigorous ? ClassifyOptions::rigorous(max_depth) : [&] {
                    ClassifyOptions o;
                    o.max_depth = max_depth;
                    return o;
                }();
            const auto v = collinear::classify(c, n, opts);
            out << verdict_json(v, c.value(), n, max_depth).dump() << "\n";
            return kOk;
        }

        if (*mhat) {
            MhatStats stats;
            const auto pts = mhat_sample(n, max_degree, budget, seed, threads, &stats);
            std::string lines;
            for (const auto& p : pts) lines += root_point_json(p).dump() + "\n";
            write_file(out_path, lines);
            if (stats.failed_words)
                err << stats.failed_words << " words skipped: root finder did not converge\n";
            return kOk;
        }

        if (*covering) {
            const auto c = parse_parameter(c_text, "--c");
            const auto pred = covering_predicate(c, n);
            const bool geo = covering_check_geometric(c, n, grid, 0.0, threads);
            out << Json{{"re", c.re()},
                        {"im", c.im()},
                        {"n", n},
                        {"s", covering_parameter(c.value())},
                        {"predicate", to_string(pred)},
                        {"grid", grid},
                        {"geometric", geo}}
                       .dump()
                << "\n";
            return kOk;
        }

        if (*certify) {
            const auto c = parse_parameter(c_text, "--c");
            std::optional<CoeffWord> word;
            if (!coeffs_text.empty()) {
                try {
                    word.emplace(n, parse_ints(coeffs_text, "--coeffs"));
                } catch (const DomainError& e) {
                    throw DomainError(std::string("--coeffs: ") + e.what());
                }
            } else if (auto_degree > 0) {
                word = in_mhat(c, n, auto_degree, tol);
                if (!word)
                    throw NumericalError("no polynomial over D_" + std::to_string(n) + " of degree <= " +
                                         std::to_string(auto_degree) + " has a root within " +
                                         std::to_string(tol) + " of c");
            } else {
                throw DomainError("certify: one of --coeffs or --auto-degree is required");
            }
            out << certificate_json(certify_interior(c.value(), n, *word)).dump() << "\n";
            return kOk;
        }

        if (*bounds_cmd) {
            const Complex c = parse_complex(c_text, "--c");
            out << bounds_json(bounds(c, n), c, n).dump() << "\n";
            return kOk;
        }

        if (*threshold) {
            out << (threshold_inequality(n) ? "true" : "false") << "\n";
            return kOk;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return kResource;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
    return kOk;
}

}  // namespace collinear::cli

#endif  // COLLINEAR_TOOLS_APP_HPP

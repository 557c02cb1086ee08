#ifndef COLLINEAR_JSON_IO_HPP
#define COLLINEAR_JSON_IO_HPP

// JSON records for the command-line tool. Doubles are written in the
// shortest form that reads back to the same value.

#include <nlohmann/json.hpp>

#include "certify.hpp"
#include "connectivity.hpp"
#include "geometry.hpp"
#include "polyroots.hpp"

namespace collinear {

using Json = nlohmann::json;

inline Json verdict_json(const Verdict& v, Complex c, int n, int max_depth) {
    Json j{{"re", c.real()},
           {"im", c.imag()},
           {"n", n},
           {"max_depth", max_depth},
           {"mode", to_string(v.mode())},
           {"tag", to_string(v.tag())}};
    if (const auto* e = v.extinction()) j["extinction_depth"] = e->depth;
    if (const auto* w = v.witness()) {
        j["witness"] = w->digits;
        j["residual"] = w->residual;
        j["series_residual"] = w->series_residual;
    }
    if (const auto* s = v.survivors()) {
        j["survivors"] = s->count;
        j["depth_reached"] = s->depth;
        j["budget_exhausted"] = s->budget_exhausted;
    }
    return j;
}

inline Json root_point_json(const RootPoint& p) {
    return Json{{"n", p.word.n()},
                {"coeffs", p.word.coeffs()},
                {"re", p.z.real()},
                {"im", p.z.imag()},
                {"residual", p.residual}};
}

/// radius is null unless a sampled radius was found.
inline Json certificate_json(const Certificate& c) {
    Json j{{"re", c.c0.real()},
           {"im", c.c0.imag()},
           {"n", c.n},
           {"coeffs", c.word.coeffs()},
           {"certified", c.certified()},
           {"radius", nullptr}};
    if (c.radius_kind == RadiusKind::Sampled) j["radius"] = c.radius;
    return j;
}

inline Json bounds_json(const BoundsRecord& b, Complex c, int n) {
    return Json{{"re", c.real()},
                {"im", c.imag()},
                {"n", n},
                {"in_annulus", b.in_annulus},
                {"outside_outer", b.outside_outer},
                {"antenna", b.antenna}};
}

}  // namespace collinear

#endif  // COLLINEAR_JSON_IO_HPP

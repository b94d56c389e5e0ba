#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expzero/serialization.hpp"

namespace expzero {

inline const std::vector<std::string> kSurfaceVars{"X1", "X2", "Xh1", "Xh2"};
inline const std::vector<bool> kSurfaceUnits{false, false, true, true};
inline const std::vector<std::string> kReducedVars{"Y", "Yh"};
inline const std::vector<bool> kReducedUnits{false, true};

enum class SurfaceKind { PointFiber, FullProjection, CurvePair };

// A surface in C^2 x C*^2 presented in reduced form: either the projection to
// C^2 is a point (explicit X1 = p1, X2 = p2 generators), or the generators
// constrain only the Xh coordinates, or a curve-over-a-curve pair (F0, F)
// with F0 in X1, X2 and F genuinely involving an Xh variable.
struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::CurvePair;
    std::vector<Poly> generators;
    std::optional<NumericValuation> valuation;  // user-requested numeric override
};

// A line m1 X1 + m2 X2 = c of rational slope together with the Bezout data
// used to parametrize it and the tracked constant chat = e^c.
struct LineSpec {
    long long m1 = 0;
    long long m2 = 0;
    long long a1 = 0;
    long long a2 = 0;
    ExactScalar c;
    ExactScalar chat;
    bool chat_fresh = false;  // chat is a freshly introduced symbol for e^c

    void validate() const {
        if (m1 == 0 && m2 == 0) throw InputError("line with m1 = m2 = 0");
        long long g = std::abs(m1), h = std::abs(m2);
        while (h) { long long t = g % h; g = h; h = t; }
        if (g != 1) throw InputError("line coefficients are not coprime");
        if (a1 * m1 + a2 * m2 != 1) throw InputError("Bezout identity violated");
    }
};

struct BackSubResult {
    LineSpec line;
    std::vector<Poly> images;        // the four substitution polynomials over (Y, Yh)
    Poly g_reduced;                  // primitive normal form of F after substitution
    std::int64_t clearing_exponent = 0;  // g_reduced ~ Yh^clearing * F(images)
    ExactScalar removed_content;
};

enum class CaseLabel { A, B, C, D1, D2, D31, D32, Unsupported };
enum class Verdict { Empty, SinglePoint, NonemptyFinite, InfiniteDense, Unknown };

struct SolvedPoint {
    std::complex<double> z1;
    std::complex<double> z2;
    double residual = 0.0;
    bool heuristic = false;
};

struct ClassificationResult {
    CaseLabel case_label = CaseLabel::Unsupported;
    Verdict verdict = Verdict::Unknown;
    std::optional<BackSubResult> backsub;
    std::optional<std::array<ExactScalar, 2>> projection_point;  // kind a
    std::vector<SolvedPoint> points;                             // d31
    std::vector<std::string> heuristic_flags;
    std::string note;
};

inline std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return "a";
        case CaseLabel::B: return "b";
        case CaseLabel::C: return "c";
        case CaseLabel::D1: return "d1";
        case CaseLabel::D2: return "d2";
        case CaseLabel::D31: return "d31";
        case CaseLabel::D32: return "d32";
        default: return "unsupported";
    }
}

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Empty: return "empty";
        case Verdict::SinglePoint: return "single_point";
        case Verdict::NonemptyFinite: return "nonempty_finite";
        case Verdict::InfiniteDense: return "infinite_dense";
        default: return "unknown";
    }
}

inline Json line_to_json(const LineSpec& line) {
    return Json{{"m1", line.m1}, {"m2", line.m2}, {"a1", line.a1}, {"a2", line.a2},
                {"c", scalar_to_json(line.c)}, {"chat", scalar_to_json(line.chat)}};
}

inline Json classification_to_json(const ClassificationResult& r) {
    Json witness = Json::object();
    if (r.projection_point) {
        witness["point"] = Json::array({scalar_to_json((*r.projection_point)[0]),
                                        scalar_to_json((*r.projection_point)[1])});
    }
    if (r.backsub) {
        witness["line"] = line_to_json(r.backsub->line);
        witness["G"] = poly_to_json(r.backsub->g_reduced);
        witness["clearing_exponent"] = r.backsub->clearing_exponent;
        Json images = Json::array();
        for (const auto& im : r.backsub->images) images.push_back(poly_to_json(im));
        witness["images"] = images;
    }
    if (!r.points.empty()) {
        Json pts = Json::array();
        for (const auto& p : r.points) {
            pts.push_back(Json{{"z1", Json::array({p.z1.real(), p.z1.imag()})},
                               {"z2", Json::array({p.z2.real(), p.z2.imag()})},
                               {"residual", p.residual},
                               {"heuristic", p.heuristic}});
        }
        witness["points"] = pts;
    }
    if (!r.note.empty()) witness["note"] = r.note;
    return Json{{"case", to_string(r.case_label)},
                {"verdict", to_string(r.verdict)},
                {"witness", witness},
                {"heuristic_flags", r.heuristic_flags}};
}

inline SurfaceSpec surface_from_json(const Json& j) {
    SurfaceSpec s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point_fiber") s.kind = SurfaceKind::PointFiber;
    else if (kind == "full_projection") s.kind = SurfaceKind::FullProjection;
    else if (kind == "curve_pair") s.kind = SurfaceKind::CurvePair;
    else throw InputError("unknown surface kind " + kind);
    for (const auto& g : j.at("generators")) s.generators.push_back(poly_from_json(g));
    if (j.contains("valuation")) {
        NumericValuation v = NumericValuation::standard();
        for (const auto& [name, val] : j.at("valuation").items())
            v.values[name] = {val.at(0).get<double>(), val.at(1).get<double>()};
        v.require_consistent();
        s.valuation = v;
    }
    return s;
}

}  // namespace expzero

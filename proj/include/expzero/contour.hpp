#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "expzero/analytic_fn.hpp"

namespace expzero {

// A region touches an excluded point (or is otherwise geometrically unusable).
struct RegionError : InputError {
    using InputError::InputError;
};

// Counterclockwise contour; an annulus means its two boundary circles with
// the inner one traversed clockwise, so the enclosed region is the ring.
struct Contour {
    enum class Kind { Circle, Rect, Annulus };
    Kind kind = Kind::Circle;
    Complex center{0.0, 0.0};
    double r1 = 0.0, r2 = 1.0;          // circle uses r2; annulus uses [r1, r2]
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // rect corners, x1 < x2, y1 < y2
    int sampling = 1024;

    static Contour circle(Complex c, double r) {
        Contour k;
        k.kind = Kind::Circle;
        k.center = c;
        k.r2 = r;
        return k;
    }
    static Contour annulus(Complex c, double inner, double outer) {
        Contour k;
        k.kind = Kind::Annulus;
        k.center = c;
        k.r1 = inner;
        k.r2 = outer;
        return k;
    }
    static Contour rect(double ax, double ay, double bx, double by) {
        Contour k;
        k.kind = Kind::Rect;
        k.x1 = std::min(ax, bx);
        k.x2 = std::max(ax, bx);
        k.y1 = std::min(ay, by);
        k.y2 = std::max(ay, by);
        return k;
    }

    void validate() const {
        switch (kind) {
            case Kind::Circle:
                if (!(r2 > 0)) throw RegionError("circle needs a positive radius");
                break;
            case Kind::Annulus:
                if (!(0 < r1 && r1 < r2)) throw RegionError("annulus needs 0 < r1 < r2");
                break;
            case Kind::Rect:
                if (!(x1 < x2 && y1 < y2)) throw RegionError("empty rectangle");
                break;
        }
    }

    // Contours may wind around excluded points but must not pass near them.
    void require_boundary_clear(const std::vector<Complex>& excluded, double clear) const {
        validate();
        for (const auto& p : excluded) {
            double d = std::abs(p - center);
            switch (kind) {
                case Kind::Circle:
                    if (std::abs(d - r2) < clear)
                        throw RegionError("excluded point on the contour");
                    break;
                case Kind::Annulus:
                    if (std::abs(d - r1) < clear || std::abs(d - r2) < clear)
                        throw RegionError("excluded point on the contour");
                    break;
                case Kind::Rect: {
                    bool in_outer = p.real() > x1 - clear && p.real() < x2 + clear &&
                                    p.imag() > y1 - clear && p.imag() < y2 + clear;
                    bool in_inner = p.real() > x1 + clear && p.real() < x2 - clear &&
                                    p.imag() > y1 + clear && p.imag() < y2 - clear;
                    if (in_outer && !in_inner)
                        throw RegionError("excluded point on the contour");
                    break;
                }
            }
        }
    }

    // Zero-counting regions must exclude essential singularities entirely;
    // only the hole of an annulus may hold them.
    void require_region_clear(const std::vector<Complex>& excluded, double clear) const {
        validate();
        for (const auto& p : excluded) {
            double d = std::abs(p - center);
            switch (kind) {
                case Kind::Circle:
                    if (d < r2 + clear)
                        throw RegionError("excluded point inside or near the disc");
                    break;
                case Kind::Annulus:
                    if (d > r1 - clear && d < r2 + clear)
                        throw RegionError("excluded point inside or near the annulus");
                    break;
                case Kind::Rect:
                    if (p.real() > x1 - clear && p.real() < x2 + clear &&
                        p.imag() > y1 - clear && p.imag() < y2 + clear)
                        throw RegionError("excluded point inside or near the rectangle");
                    break;
            }
        }
    }
};

// One smooth parametrized piece of a closed contour.
struct PathSegment {
    std::function<Complex(double)> map;  // t in [0, 1]
    double t0 = 0.0, t1 = 1.0;
};

inline std::vector<PathSegment> circle_segments(Complex c, double r) {
    PathSegment s;
    s.map = [c, r](double t) { return c + std::polar(r, 6.283185307179586476925287 * t); };
    return {s};
}

inline std::vector<PathSegment> rect_segments(double x1, double y1, double x2, double y2) {
    auto seg = [](Complex a, Complex b) {
        PathSegment s;
        s.map = [a, b](double t) { return a + t * (b - a); };
        return s;
    };
    Complex c1{x1, y1}, c2{x2, y1}, c3{x2, y2}, c4{x1, y2};
    return {seg(c1, c2), seg(c2, c3), seg(c3, c4), seg(c4, c1)};
}

inline std::vector<PathSegment> arc_segments(Complex c, double r, double th0, double th1) {
    PathSegment s;
    s.map = [c, r, th0, th1](double t) { return c + std::polar(r, th0 + t * (th1 - th0)); };
    return {s};
}

inline std::vector<PathSegment> radial_segment(Complex c, double th, double r0, double r1) {
    PathSegment s;
    s.map = [c, th, r0, r1](double t) { return c + std::polar(r0 + t * (r1 - r0), th); };
    return {s};
}

}  // namespace expzero

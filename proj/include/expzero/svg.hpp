#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "expzero/isolate.hpp"

namespace expzero {

// Minimal SVG emitter for diagnostics: contour traces, zero markers and
// excluded-point crosses on a fixed square canvas.
class SvgPlot {
public:
    SvgPlot(double x1, double y1, double x2, double y2) {
        double w = x2 - x1, h = y2 - y1;
        double pad = 0.08 * std::max(w, h);
        x1_ = x1 - pad; y1_ = y1 - pad;
        scale_ = kSize / std::max(w + 2 * pad, h + 2 * pad);
    }

    void add_circle_path(Complex c, double r, const char* color) {
        body_ += "<circle cx=\"" + num(px(c.real())) + "\" cy=\"" + num(py(c.imag())) +
                 "\" r=\"" + num(r * scale_) + "\" fill=\"none\" stroke=\"" + color +
                 "\" stroke-width=\"1.2\"/>\n";
    }

    void add_rect_path(double x1, double y1, double x2, double y2, const char* color) {
        body_ += "<rect x=\"" + num(px(x1)) + "\" y=\"" + num(py(y2)) + "\" width=\"" +
                 num((x2 - x1) * scale_) + "\" height=\"" + num((y2 - y1) * scale_) +
                 "\" fill=\"none\" stroke=\"" + std::string(color) +
                 "\" stroke-width=\"1.2\"/>\n";
    }

    void add_zero_marker(Complex z) {
        body_ += "<circle cx=\"" + num(px(z.real())) + "\" cy=\"" + num(py(z.imag())) +
                 "\" r=\"3.5\" fill=\"#c0392b\"/>\n";
    }

    void add_cross(Complex z) {
        double x = px(z.real()), y = py(z.imag());
        body_ += "<path d=\"M" + num(x - 5) + " " + num(y - 5) + " L" + num(x + 5) + " " +
                 num(y + 5) + " M" + num(x - 5) + " " + num(y + 5) + " L" + num(x + 5) +
                 " " + num(y - 5) + "\" stroke=\"#2c3e50\" stroke-width=\"1.5\"/>\n";
    }

    void add_region(const Contour& region) {
        switch (region.kind) {
            case Contour::Kind::Circle:
                add_circle_path(region.center, region.r2, "#2980b9");
                break;
            case Contour::Kind::Annulus:
                add_circle_path(region.center, region.r1, "#2980b9");
                add_circle_path(region.center, region.r2, "#2980b9");
                break;
            case Contour::Kind::Rect:
                add_rect_path(region.x1, region.y1, region.x2, region.y2, "#2980b9");
                break;
        }
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw InputError("cannot write SVG to " + path);
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
            << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize
            << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_ << "</svg>\n";
    }

private:
    static constexpr int kSize = 800;
    double x1_ = 0, y1_ = 0, scale_ = 1;
    std::string body_;

    double px(double x) const { return (x - x1_) * scale_; }
    double py(double y) const { return kSize - (y - y1_) * scale_; }
    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }
};

inline void write_region_svg(const std::string& path, const Contour& region,
                             const std::vector<ZeroCertificate>& certs,
                             const std::vector<Complex>& excluded) {
    double x1, y1, x2, y2;
    if (region.kind == Contour::Kind::Rect) {
        x1 = region.x1; y1 = region.y1; x2 = region.x2; y2 = region.y2;
    } else {
        x1 = region.center.real() - region.r2;
        y1 = region.center.imag() - region.r2;
        x2 = region.center.real() + region.r2;
        y2 = region.center.imag() + region.r2;
    }
    SvgPlot plot(x1, y1, x2, y2);
    plot.add_region(region);
    for (const auto& c : certs)
        for (const auto& r : c.roots) plot.add_zero_marker(r.z);
    for (const auto& p : excluded) plot.add_cross(p);
    plot.write(path);
}

}  // namespace expzero

#pragma once

#include <array>
#include <optional>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "expzero/serialization.hpp"
#include "expzero/winding.hpp"

namespace expzero {

struct BudgetExceeded : Error {
    using Error::Error;
};

// Subdivision cell: an axis-aligned rectangle or an annular sector.
struct Box {
    enum class Kind { Rect, Sector };
    Kind kind = Kind::Rect;
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;       // rect
    Complex center{0, 0};
    double r1 = 0, r2 = 0, th1 = 0, th2 = 0;     // sector

    static Box rect(double ax, double ay, double bx, double by) {
        Box b;
        b.kind = Kind::Rect;
        b.x1 = ax; b.y1 = ay; b.x2 = bx; b.y2 = by;
        return b;
    }
    static Box sector(Complex c, double ra, double rb, double ta, double tb) {
        Box b;
        b.kind = Kind::Sector;
        b.center = c; b.r1 = ra; b.r2 = rb; b.th1 = ta; b.th2 = tb;
        return b;
    }

    double diameter() const {
        if (kind == Kind::Rect) return std::hypot(x2 - x1, y2 - y1);
        double arc = 0.5 * (r1 + r2) * (th2 - th1);
        return std::hypot(arc, r2 - r1);
    }

    Complex midpoint() const {
        if (kind == Kind::Rect) return {0.5 * (x1 + x2), 0.5 * (y1 + y2)};
        return center + std::polar(0.5 * (r1 + r2), 0.5 * (th1 + th2));
    }

    bool contains_strict(Complex z) const {
        if (kind == Kind::Rect)
            return z.real() > x1 && z.real() < x2 && z.imag() > y1 && z.imag() < y2;
        Complex w = z - center;
        double r = std::abs(w);
        if (!(r > r1 && r < r2)) return false;
        double t = std::arg(w);
        const double two_pi = 6.28318530717958647692;
        while (t < th1) t += two_pi;
        return t > th1 && t < th2;
    }

    std::array<Box, 2> split(double frac) const {
        if (kind == Kind::Rect) {
            if (x2 - x1 >= y2 - y1) {
                double xm = x1 + frac * (x2 - x1);
                return {rect(x1, y1, xm, y2), rect(xm, y1, x2, y2)};
            }
            double ym = y1 + frac * (y2 - y1);
            return {rect(x1, y1, x2, ym), rect(x1, ym, x2, y2)};
        }
        double arc = 0.5 * (r1 + r2) * (th2 - th1);
        if (arc >= r2 - r1) {
            double tm = th1 + frac * (th2 - th1);
            return {sector(center, r1, r2, th1, tm), sector(center, r1, r2, tm, th2)};
        }
        double rm = r1 + frac * (r2 - r1);
        return {sector(center, r1, rm, th1, th2), sector(center, rm, r2, th1, th2)};
    }

    std::vector<PathSegment> boundary() const {
        if (kind == Kind::Rect) return rect_segments(x1, y1, x2, y2);
        std::vector<PathSegment> segs;
        for (auto& s : arc_segments(center, r2, th1, th2)) segs.push_back(s);
        for (auto& s : radial_segment(center, th2, r2, r1)) segs.push_back(s);
        for (auto& s : arc_segments(center, r1, th2, th1)) segs.push_back(s);
        for (auto& s : radial_segment(center, th1, r1, r2)) segs.push_back(s);
        return segs;
    }

    std::tuple<int, double, double, double, double, double, double> key() const {
        if (kind == Kind::Rect) return {0, x1, y1, x2, y2, 0.0, 0.0};
        return {1, center.real(), center.imag(), r1, th1, r2, th2};
    }
    friend bool operator<(const Box& a, const Box& b) { return a.key() < b.key(); }
};

struct RefinedRoot {
    Complex z;
    double residual = 0.0;
    int iters = 0;
};

struct ZeroCertificate {
    enum class Status { Isolated, Cluster, ContourFailure };
    Box box;
    int winding = 0;
    std::vector<RefinedRoot> roots;
    Status status = Status::Isolated;
};

struct IsolationResult {
    std::vector<ZeroCertificate> certificates;
    int region_count = 0;   // zeros of the requested region, with multiplicity
    int cells_used = 0;
    bool truncated = false;

    int isolated() const {
        int n = 0;
        for (const auto& c : certificates)
            if (c.status == ZeroCertificate::Status::Isolated) ++n;
        return n;
    }
};

struct NewtonOutcome {
    Complex z{0, 0};
    double residual = 0.0;
    int iters = 0;
    bool converged = false;
};

// Plain Newton iteration on phi from a given start. Divergence, iteration
// exhaustion and walking into an excluded point all end the run unconverged;
// callers downgrade to cluster status rather than failing.
inline NewtonOutcome newton_refine(const AnalyticFn& fn, Complex z0,
                                   const Tolerances& tol = {}) {
    NewtonOutcome out;
    if (!fn.df) throw InputError("Newton refinement needs a derivative");
    Complex z = z0;
    for (int it = 1; it <= tol.newton_max_iter; ++it) {
        out.iters = it;
        if (fn.distance_to_excluded(z) < tol.clearance) return out;
        ScaledComplex fv = fn.f(z);
        if (fv.is_zero()) {
            out.z = z;
            out.residual = 0.0;
            out.converged = true;
            return out;
        }
        Complex step = ratio(fv, fn.df(z));
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return out;
        z -= step;
        if (std::abs(z) > tol.newton_divergence) return out;
        if (std::abs(step) < tol.newton_step * std::max(1.0, std::abs(z))) {
            out.z = z;
            double la = fn.f(z).log_abs();
            out.residual = la < -700.0 ? 0.0 : std::exp(la);
            out.converged = true;
            return out;
        }
    }
    return out;
}

namespace detail {

inline int box_count(const AnalyticFn& fn, const Box& box, const Tolerances& tol,
                     int samples) {
    if (box.kind == Box::Kind::Rect)
        return winding_number(fn, Contour::rect(box.x1, box.y1, box.x2, box.y2), tol, samples);
    for (const auto& p : fn.excluded)
        if (box.contains_strict(p)) throw RegionError("excluded point inside cell");
    return phase_to_integer(loop_phase(fn, box.boundary(), tol, samples), tol);
}

inline bool fully_outside_disc(const Box& box, Complex c, double r) {
    if (box.kind != Box::Kind::Rect) return false;
    double dx = std::max({box.x1 - c.real(), 0.0, c.real() - box.x2});
    double dy = std::max({box.y1 - c.imag(), 0.0, c.imag() - box.y2});
    return std::hypot(dx, dy) > r;
}

inline bool cell_contains_excluded(const AnalyticFn& fn, const Box& box) {
    for (const auto& p : fn.excluded)
        if (box.contains_strict(p)) return true;
    return false;
}

struct QueueCell {
    int count;
    Box box;
    friend bool operator<(const QueueCell& a, const QueueCell& b) {
        if (a.count != b.count) return a.count < b.count;
        return a.box < b.box;
    }
};

}  // namespace detail

// Subdivide the region until each cell holds a single zero, Newton-refine
// from cell centers, and certify each root by its residual. Cells are split
// best-first (fewest zeros first), so a handful of certificates can be
// extracted from a region with many zeros without exhausting the budget.
inline IsolationResult isolate_zeros(const AnalyticFn& fn, const Contour& region,
                                     int max_zeros = 64, const Tolerances& tol = {}) {
    region.require_region_clear(fn.excluded, tol.clearance);
    IsolationResult result;
    result.region_count = count_zeros(fn, region, tol);
    if (result.region_count == 0) return result;

    static constexpr double kFractions[] = {0.5,  0.46875, 0.53125, 0.421875,
                                            0.578125, 0.484375, 0.515625, 0.4375};

    // Cells containing an excluded point are never winding-counted; they are
    // split last and dropped at the minimum size (zeros at excluded points
    // are out of scope).
    constexpr int kUncounted = 1 << 28;

    std::set<detail::QueueCell> queue;
    const bool disc_filter = region.kind == Contour::Kind::Circle;

    auto count_cell = [&](const Box& b) {
        ++result.cells_used;
        return detail::box_count(fn, b, tol, 64);
    };

    auto certify_single = [&](const Box& box) {
        ZeroCertificate cert;
        cert.box = box;
        cert.winding = 1;
        cert.status = ZeroCertificate::Status::Cluster;
        std::array<Complex, 5> starts;
        starts[0] = box.midpoint();
        auto h = box.split(0.5);
        starts[1] = h[0].midpoint();
        starts[2] = h[1].midpoint();
        auto q = h[0].split(0.5);
        starts[3] = q[0].midpoint();
        starts[4] = q[1].midpoint();
        for (Complex s : starts) {
            NewtonOutcome n = newton_refine(fn, s, tol);
            if (n.converged && box.contains_strict(n.z) && n.residual < tol.residual) {
                cert.roots.push_back({n.z, n.residual, n.iters});
                cert.status = ZeroCertificate::Status::Isolated;
                break;
            }
        }
        if (disc_filter && cert.status == ZeroCertificate::Status::Isolated &&
            std::abs(cert.roots[0].z - region.center) > region.r2)
            return;  // isolated, but outside the requested disc
        result.certificates.push_back(std::move(cert));
    };

    enum : int { kDropped = -1 };

    // Stage one: classify a cell without side effects. Throws ZeroOnContour
    // (and friends) when its boundary cannot be counted; the caller then
    // retries the parent split at a different fraction.
    auto classify_cell = [&](const Box& box) -> int {
        if (disc_filter && detail::fully_outside_disc(box, region.center, region.r2))
            return kDropped;
        if (detail::cell_contains_excluded(fn, box)) return kUncounted;
        return count_cell(box);
    };

    // Stage two: act on a classified cell.
    auto dispatch_cell = [&](const Box& box, int c) {
        if (c == kDropped || c == 0) return;
        if (c == kUncounted) {
            if (box.diameter() > tol.min_cell) queue.insert({kUncounted, box});
            return;
        }
        if (c == 1) {
            certify_single(box);
            return;
        }
        if (box.diameter() <= tol.min_cell) {
            ZeroCertificate cert;
            cert.box = box;
            cert.winding = c;
            cert.status = ZeroCertificate::Status::Cluster;
            result.certificates.push_back(std::move(cert));
            return;
        }
        queue.insert({c, box});
    };

    auto process_child = [&](const Box& box) { dispatch_cell(box, classify_cell(box)); };

    // Seed the queue with the region itself (sectors for an annulus, the
    // rectangle or bounding square otherwise).
    {
        bool seeded = false;
        for (std::size_t attempt = 0; attempt < std::size(kFractions) && !seeded; ++attempt) {
            try {
                if (region.kind == Contour::Kind::Annulus) {
                    double t0 = 6.28318530717958647692 * (kFractions[attempt] - 0.5);
                    Box s1 = Box::sector(region.center, region.r1, region.r2, t0,
                                         t0 + 3.14159265358979323846);
                    Box s2 = Box::sector(region.center, region.r1, region.r2,
                                         t0 + 3.14159265358979323846,
                                         t0 + 6.28318530717958647692);
                    int c1 = classify_cell(s1);
                    int c2 = classify_cell(s2);
                    dispatch_cell(s1, c1);
                    dispatch_cell(s2, c2);
                } else {
                    Box root = region.kind == Contour::Kind::Rect
                                   ? Box::rect(region.x1, region.y1, region.x2, region.y2)
                                   : Box::rect(region.center.real() - region.r2,
                                               region.center.imag() - region.r2,
                                               region.center.real() + region.r2,
                                               region.center.imag() + region.r2);
                    if (attempt > 0) {
                        double g = 1.0 + tol.jitter_scale * double(attempt);
                        double cx = 0.5 * (root.x1 + root.x2), cy = 0.5 * (root.y1 + root.y2);
                        root = Box::rect(cx - g * (cx - root.x1), cy - g * (cy - root.y1),
                                         cx + g * (root.x2 - cx), cy + g * (root.y2 - cy));
                    }
                    process_child(root);
                }
                seeded = true;
            } catch (const ZeroOnContour&) {
                if (attempt + 1 == std::size(kFractions)) throw;
            } catch (const EvalAtExcludedPoint&) {
                if (attempt + 1 == std::size(kFractions)) throw;
            }
        }
    }

    while (!queue.empty()) {
        if (result.isolated() >= max_zeros) {
            result.truncated = true;
            break;
        }
        if (result.cells_used >= tol.cell_budget) {
            result.truncated = true;
            if (result.certificates.empty())
                throw BudgetExceeded("subdivision cell budget exhausted");
            break;
        }
        detail::QueueCell cur = *queue.begin();
        queue.erase(queue.begin());
        if (cur.count == kUncounted && cur.box.diameter() <= tol.min_cell) continue;

        bool split_ok = false;
        for (std::size_t attempt = 0; attempt < std::size(kFractions) && !split_ok; ++attempt) {
            auto children = cur.box.split(kFractions[attempt]);
            try {
                int c0, c1;
                if (tol.threads > 1) {
                    std::exception_ptr e0;
                    c0 = c1 = kDropped;
                    std::thread worker([&] {
                        try { c0 = classify_cell(children[0]); }
                        catch (...) { e0 = std::current_exception(); }
                    });
                    try {
                        c1 = classify_cell(children[1]);
                    } catch (...) {
                        worker.join();
                        throw;
                    }
                    worker.join();
                    if (e0) std::rethrow_exception(e0);
                } else {
                    c0 = classify_cell(children[0]);
                    c1 = classify_cell(children[1]);
                }
                dispatch_cell(children[0], c0);
                dispatch_cell(children[1], c1);
                split_ok = true;
            } catch (const ZeroOnContour&) {
            } catch (const EvalAtExcludedPoint&) {
            } catch (const RegionError&) {
            }
        }
        if (!split_ok) {
            ZeroCertificate cert;
            cert.box = cur.box;
            cert.winding = cur.count == kUncounted ? 0 : cur.count;
            cert.status = ZeroCertificate::Status::ContourFailure;
            result.certificates.push_back(std::move(cert));
        }
    }

    std::sort(result.certificates.begin(), result.certificates.end(),
              [](const ZeroCertificate& a, const ZeroCertificate& b) { return a.box < b.box; });
    return result;
}

inline Json box_to_json(const Box& b) {
    if (b.kind == Box::Kind::Rect)
        return Json{{"kind", "rect"}, {"x1", b.x1}, {"y1", b.y1}, {"x2", b.x2}, {"y2", b.y2}};
    return Json{{"kind", "annulus_sector"},
                {"cx", b.center.real()}, {"cy", b.center.imag()},
                {"r1", b.r1}, {"r2", b.r2}, {"t1", b.th1}, {"t2", b.th2}};
}

inline Json certificate_to_json(const ZeroCertificate& c) {
    Json roots = Json::array();
    for (const auto& r : c.roots)
        roots.push_back(Json{{"re", r.z.real()}, {"im", r.z.imag()},
                             {"residual", r.residual}, {"iters", r.iters}});
    const char* status = c.status == ZeroCertificate::Status::Isolated ? "isolated"
                        : c.status == ZeroCertificate::Status::Cluster ? "cluster"
                                                                       : "contour_failure";
    return Json{{"box", box_to_json(c.box)}, {"winding", c.winding}, {"roots", roots},
                {"status", status}};
}

}  // namespace expzero

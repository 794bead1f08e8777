#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "waysim/errors.hpp"

namespace waysim {

/// Shape catalogs for object and apparatus states. box and triangle
/// have exactly compact support [center - halfwidth, center + halfwidth],
/// which the repeatability halfwidth formulas rely on.
struct GaussianShape {
    double center = 0.0;
    double sigma = 1.0;  // std deviation of the position *density*
};

struct BoxShape {
    double center = 0.0;
    double halfwidth = 1.0;
    double edge_smoothing = 0.0;  // raised-cosine ramp width inside the support
};

struct TriangleShape {
    double center = 0.0;
    double halfwidth = 1.0;
};

struct SkewedGaussianShape {
    double center = 0.0;
    double sigma = 1.0;
    double skew = 0.0;  // skew-normal shape parameter
};

using ProbeFamily = std::variant<GaussianShape, BoxShape, TriangleShape, SkewedGaussianShape>;

inline void validate(const ProbeFamily& f) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianShape> ||
                          std::is_same_v<T, SkewedGaussianShape>) {
                require(s.sigma > 0.0, "invalid-probe", "sigma must be positive");
            } else if constexpr (std::is_same_v<T, BoxShape>) {
                require(s.halfwidth > 0.0, "invalid-probe", "halfwidth must be positive");
                require(s.edge_smoothing >= 0.0 && s.edge_smoothing < s.halfwidth,
                        "invalid-probe", "edge_smoothing must lie in [0, halfwidth)");
            } else if constexpr (std::is_same_v<T, TriangleShape>) {
                require(s.halfwidth > 0.0, "invalid-probe", "halfwidth must be positive");
            }
        },
        f);
}

inline std::string kind_name(const ProbeFamily& f) {
    struct V {
        std::string operator()(const GaussianShape&) const { return "gaussian"; }
        std::string operator()(const BoxShape&) const { return "box"; }
        std::string operator()(const TriangleShape&) const { return "triangle"; }
        std::string operator()(const SkewedGaussianShape&) const { return "skewed_gaussian"; }
    };
    return std::visit(V{}, f);
}

/// Support interval for compactly supported families, nullopt otherwise.
inline std::optional<std::pair<double, double>> compact_support(const ProbeFamily& f) {
    if (const auto* b = std::get_if<BoxShape>(&f))
        return std::make_pair(b->center - b->halfwidth, b->center + b->halfwidth);
    if (const auto* t = std::get_if<TriangleShape>(&f))
        return std::make_pair(t->center - t->halfwidth, t->center + t->halfwidth);
    return std::nullopt;
}

/// Halfwidth of the compact support, as used by the repeatability
/// predictions. Throws for non-compact families.
inline double support_halfwidth(const ProbeFamily& f) {
    if (const auto* b = std::get_if<BoxShape>(&f)) return b->halfwidth;
    if (const auto* t = std::get_if<TriangleShape>(&f)) return t->halfwidth;
    fail("non-compact-probe", kind_name(f) + " has no compact support halfwidth");
}

/// Interval the grid must contain for sampling to be considered safe:
/// the compact support, or center +/- 3 sigma for unbounded tails.
inline std::pair<double, double> required_extent(const ProbeFamily& f) {
    if (auto s = compact_support(f)) return *s;
    if (const auto* g = std::get_if<GaussianShape>(&f))
        return {g->center - 3.0 * g->sigma, g->center + 3.0 * g->sigma};
    const auto& s = std::get<SkewedGaussianShape>(f);
    return {s.center - 3.0 * s.sigma, s.center + 3.0 * s.sigma};
}

/// Unnormalized amplitude at x. The grid sampler takes care of the
/// L2 normalization.
inline double amplitude_at(const ProbeFamily& f, double x) {
    struct V {
        double x;
        double operator()(const GaussianShape& g) const {
            const double z = (x - g.center) / g.sigma;
            return std::exp(-0.25 * z * z);
        }
        double operator()(const BoxShape& b) const {
            const double r = std::abs(x - b.center);
            if (r >= b.halfwidth) return 0.0;
            if (b.edge_smoothing <= 0.0 || r <= b.halfwidth - b.edge_smoothing) return 1.0;
            const double t = (r - (b.halfwidth - b.edge_smoothing)) / b.edge_smoothing;
            return std::cos(0.5 * M_PI * t);
        }
        double operator()(const TriangleShape& t) const {
            const double r = std::abs(x - t.center);
            if (r >= t.halfwidth) return 0.0;
            return std::sqrt(1.0 - r / t.halfwidth);
        }
        double operator()(const SkewedGaussianShape& s) const {
            const double z = (x - s.center) / s.sigma;
            // sqrt of the skew-normal density (up to normalization)
            const double tail = 0.5 * std::erfc(-s.skew * z / std::sqrt(2.0));
            return std::exp(-0.25 * z * z) * std::sqrt(tail);
        }
    };
    return std::visit(V{x}, f);
}

} // namespace waysim

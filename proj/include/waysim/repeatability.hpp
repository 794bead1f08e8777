#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "waysim/errors.hpp"
#include "waysim/joint_density.hpp"
#include "waysim/probe_family.hpp"

namespace waysim {

enum class Model { ozawa, alt };

inline std::string to_string(Model m) { return m == Model::ozawa ? "ozawa" : "alt"; }

/// Half-open interval [a, b).
struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

/// Finite stand-in for the "for all outcome sets X" quantifier: a
/// partition of a window of the outcome grid into equal intervals,
/// plus (by default) the unions of adjacent pairs. Intervals are
/// snapped to cell edges.
class IntervalFamily {
public:
    static IntervalFamily partition(const GridSpec& w_grid, double window_lo, double window_hi,
                                    int pieces, bool include_adjacent_pairs = true) {
        require(pieces >= 1, "invalid-range", "interval family needs at least one piece");
        require(window_hi > window_lo, "invalid-range", "empty interval family window");
        IntervalFamily fam;
        const double dw = w_grid.dx();
        auto snap = [&](double x) {
            return w_grid.x_min + std::round((x - w_grid.x_min) / dw) * dw;
        };
        const double lo = std::max(snap(window_lo), w_grid.x_min);
        const double hi = std::min(snap(window_hi), w_grid.x_max);
        std::vector<double> edges;
        for (int i = 0; i <= pieces; ++i)
            edges.push_back(snap(lo + (hi - lo) * static_cast<double>(i) / pieces));
        for (int i = 0; i < pieces; ++i)
            if (edges[i + 1] > edges[i]) fam.intervals_.push_back({edges[i], edges[i + 1]});
        if (include_adjacent_pairs) {
            for (int i = 0; i + 2 <= pieces; ++i)
                if (edges[i + 2] > edges[i]) fam.intervals_.push_back({edges[i], edges[i + 2]});
        }
        return fam;
    }

    const std::vector<Interval>& intervals() const { return intervals_; }

private:
    std::vector<Interval> intervals_;
};

namespace detail {

inline std::pair<int, int> cell_range(const GridSpec& g, double a, double b) {
    // cells whose full extent lies inside [a, b)
    const double dx = g.dx();
    int lo = static_cast<int>(std::ceil((a - g.x_min) / dx - 1e-9));
    int hi = static_cast<int>(std::floor((b - g.x_min) / dx + 1e-9));
    lo = std::max(lo, 0);
    hi = std::min(hi, g.n);
    return {lo, std::max(lo, hi)};
}

} // namespace detail

/// P(x in X_delta | w in X) where X_delta widens X by delta on both
/// sides. Nondecreasing in delta.
inline double conditional_prob(const JointDensity& j, const Interval& X, double delta,
                               double null_mass = 1e-8) {
    require(delta >= 0.0, "invalid-range", "delta must be nonnegative");
    const auto [wa, wb] = detail::cell_range(j.w_grid(), X.a, X.b);
    const auto [xa, xb] = detail::cell_range(j.x_grid(), X.a - delta, X.b + delta);
    double denom = 0.0, numer = 0.0;
    for (int iw = wa; iw < wb; ++iw) {
        for (int ix = 0; ix < j.x_grid().n; ++ix) {
            const double v = j.at(ix, iw);
            denom += v;
            if (ix >= xa && ix < xb) numer += v;
        }
    }
    denom *= j.cell();
    numer *= j.cell();
    require(denom > null_mass, "null-conditioning-event",
            "outcome set carries mass " + std::to_string(denom));
    return numer / denom;
}

/// Smallest grid-multiple delta with conditional_prob >= 1 - eps for
/// every non-null interval in the family. Monotone bisection over the
/// cell count.
inline double repeatability_width(const JointDensity& j, const IntervalFamily& family, double eps,
                                  double null_mass = 1e-8) {
    require(eps > 0.0 && eps < 1.0, "invalid-eps", "threshold must be in (0,1)");
    const double dx = j.x_grid().dx();
    std::vector<const Interval*> live;
    for (const auto& X : family.intervals()) {
        const auto [wa, wb] = detail::cell_range(j.w_grid(), X.a, X.b);
        double m = 0.0;
        for (int iw = wa; iw < wb; ++iw)
            for (int ix = 0; ix < j.x_grid().n; ++ix) m += j.at(ix, iw);
        if (m * j.cell() > null_mass) live.push_back(&X);
    }
    require(!live.empty(), "null-conditioning-event", "no interval in the family carries mass");

    auto all_pass = [&](double delta) {
        for (const auto* X : live)
            if (conditional_prob(j, *X, delta, null_mass) < 1.0 - eps) return false;
        return true;
    };

    int hi = j.x_grid().n;  // delta = full span
    require(all_pass(hi * dx), "no-finite-delta",
            "repeatability fails even at the full window width");
    int lo = -1;  // lo always fails (or is the sentinel below zero), hi always passes
    if (all_pass(0.0)) return 0.0;
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (all_pass(mid * dx))
            hi = mid;
        else
            lo = mid;
    }
    return hi * dx;
}

/// Support halfwidth of the inaccuracy density predicted from compact
/// probe supports. For the relative-momentum pointer model the pointer
/// contribution scales like 2m/lambda (the same change of variables
/// that fixes the variance identity); for the exponential model it is
/// n/(e^lambda - 1).
inline double predicted_halfwidth_ozawa(double ref_halfwidth, double pointer_halfwidth,
                                        double lambda) {
    require(lambda > 0.0, "lambda-too-small", "lambda must be positive");
    return ref_halfwidth + 2.0 * pointer_halfwidth / lambda;
}

inline double predicted_halfwidth_alt(double probe_halfwidth, double lambda) {
    require(lambda > 1e-9, "lambda-too-small", "lambda must exceed 1e-9");
    return probe_halfwidth / (std::exp(lambda) - 1.0);
}

/// Family-based entry point: reads the halfwidths off compact probe
/// shapes and rejects non-compact ones.
inline double predicted_halfwidth(Model model, const std::vector<ProbeFamily>& probes,
                                  double lambda) {
    if (model == Model::ozawa) {
        require(probes.size() >= 2, "invalid-range", "ozawa prediction needs phi1 and phi2");
        return predicted_halfwidth_ozawa(support_halfwidth(probes[0]),
                                         support_halfwidth(probes[1]), lambda);
    }
    require(!probes.empty(), "invalid-range", "alt prediction needs the probe shape");
    return predicted_halfwidth_alt(support_halfwidth(probes[0]), lambda);
}

} // namespace waysim

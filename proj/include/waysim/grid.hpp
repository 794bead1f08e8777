#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "waysim/errors.hpp"

namespace waysim {

inline bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline int next_power_of_two(int n) {
    int p = 8;
    while (p < n) p *= 2;
    return p;
}

/// Uniform 1D sampling domain. The interval [x_min, x_max) is split
/// into n cells of width dx; sample i lives at the cell center
/// x_min + (i + 1/2) dx. n is a power of two so transforms and
/// convolutions stay O(n log n).
struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 8;

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double node(int i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
    double edge(int i) const { return x_min + static_cast<double>(i) * dx(); }
    double span() const { return x_max - x_min; }

    bool operator==(const GridSpec& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    bool same_spacing(const GridSpec& o, double rel_tol = 1e-9) const {
        return std::abs(dx() - o.dx()) <= rel_tol * dx();
    }

    /// Momentum-side grid: spacing 2*pi/(n*dx) with the node set centered
    /// on zero, so node(j) = (j - n/2) * dk.
    GridSpec conjugate() const {
        const double dk = 2.0 * M_PI / (static_cast<double>(n) * dx());
        const double k_lo = (-(static_cast<double>(n) / 2.0) - 0.5) * dk;
        return GridSpec{k_lo, k_lo + static_cast<double>(n) * dk, n};
    }
};

inline GridSpec make_grid(double x_min, double x_max, int n) {
    require(x_max > x_min, "invalid-range",
            "grid needs x_max > x_min, got [" + std::to_string(x_min) + ", " +
                std::to_string(x_max) + ")");
    require(n >= 8 && is_power_of_two(n), "n-not-power-of-two",
            "grid size must be a power of two >= 8, got " + std::to_string(n));
    return GridSpec{x_min, x_max, n};
}

/// Symmetric grid [-halfspan, halfspan).
inline GridSpec make_centered_grid(double halfspan, int n) {
    return make_grid(-halfspan, halfspan, n);
}

} // namespace waysim

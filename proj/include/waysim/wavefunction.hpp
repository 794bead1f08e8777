#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "waysim/errors.hpp"
#include "waysim/grid.hpp"
#include "waysim/numeric_policy.hpp"
#include "waysim/probe_family.hpp"

namespace waysim {

using cdouble = std::complex<double>;

/// Complex amplitudes on a grid with unit L2 norm,
/// dx * sum |amps[i]|^2 = 1. Immutable after construction.
class WaveFunction {
public:
    WaveFunction(GridSpec grid, std::vector<cdouble> amps) : grid_(grid), amps_(std::move(amps)) {
        require(static_cast<int>(amps_.size()) == grid_.n, "invalid-range",
                "amplitude count does not match grid size");
        double nrm2 = 0.0;
        for (const auto& a : amps_) nrm2 += std::norm(a);
        nrm2 *= grid_.dx();
        require(nrm2 > 0.0 && std::isfinite(nrm2), "non-normalized-input",
                "cannot normalize a zero or non-finite state");
        const double scale = 1.0 / std::sqrt(nrm2);
        for (auto& a : amps_) a *= scale;
    }

    const GridSpec& grid() const { return grid_; }
    const std::vector<cdouble>& amps() const { return amps_; }
    cdouble amp(int i) const { return amps_[static_cast<std::size_t>(i)]; }
    int size() const { return grid_.n; }

    /// Interpolated amplitude: Catmull-Rom in the interior (norm errors
    /// O(dx^4) for smooth states), linear in the outermost cells, zero
    /// outside the node range.
    cdouble value_at(double x) const {
        const double t = (x - grid_.node(0)) / grid_.dx();
        if (t < 0.0 || t > static_cast<double>(grid_.n - 1)) return {0.0, 0.0};
        const int i = std::min(static_cast<int>(t), grid_.n - 2);
        const double w = t - static_cast<double>(i);
        if (i >= 1 && i <= grid_.n - 3) {
            const cdouble p0 = amps_[static_cast<std::size_t>(i - 1)];
            const cdouble p1 = amps_[static_cast<std::size_t>(i)];
            const cdouble p2 = amps_[static_cast<std::size_t>(i + 1)];
            const cdouble p3 = amps_[static_cast<std::size_t>(i + 2)];
            return 0.5 * (2.0 * p1 + (p2 - p0) * w + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (w * w) +
                          (3.0 * p1 - p0 - 3.0 * p2 + p3) * (w * w * w));
        }
        return amps_[static_cast<std::size_t>(i)] * (1.0 - w) +
               amps_[static_cast<std::size_t>(i + 1)] * w;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& a : amps_) m = std::max(m, std::abs(a));
        return m;
    }

    /// True when the outermost `fraction` of cells on each side stays below
    /// rel_amp of the peak amplitude, i.e. transforms will not wrap.
    bool boundary_clean(double rel_amp = default_policy().boundary_rel_amp,
                        double fraction = default_policy().boundary_fraction) const {
        const int edge = std::max(1, static_cast<int>(fraction * grid_.n));
        const double cap = rel_amp * max_abs();
        for (int i = 0; i < edge; ++i) {
            if (std::abs(amps_[static_cast<std::size_t>(i)]) > cap) return false;
            if (std::abs(amps_[static_cast<std::size_t>(grid_.n - 1 - i)]) > cap) return false;
        }
        return true;
    }

private:
    GridSpec grid_;
    std::vector<cdouble> amps_;
};

inline WaveFunction sample_wavefunction(const GridSpec& grid,
                                        const std::function<cdouble(double)>& psi) {
    std::vector<cdouble> amps(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) amps[static_cast<std::size_t>(i)] = psi(grid.node(i));
    return WaveFunction(grid, std::move(amps));
}

/// Sample one of the catalog shapes onto the grid. Rejects shapes whose
/// support (or 3 sigma extent) does not fit inside the grid.
inline WaveFunction sample_wavefunction(const GridSpec& grid, const ProbeFamily& family) {
    validate(family);
    const auto [lo, hi] = required_extent(family);
    require(lo >= grid.x_min && hi <= grid.x_max, "support-exceeds-grid",
            kind_name(family) + " needs [" + std::to_string(lo) + ", " + std::to_string(hi) +
                "] inside [" + std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) +
                ")");
    return sample_wavefunction(grid, [&](double x) { return cdouble(amplitude_at(family, x), 0.0); });
}

/// Multiply by the plane wave exp(i k0 x); shifts the momentum
/// distribution by k0 and leaves the position density unchanged.
inline WaveFunction modulate(const WaveFunction& psi, double k0) {
    std::vector<cdouble> amps(psi.amps());
    for (int i = 0; i < psi.size(); ++i)
        amps[static_cast<std::size_t>(i)] *= std::polar(1.0, k0 * psi.grid().node(i));
    return WaveFunction(psi.grid(), std::move(amps));
}

} // namespace waysim

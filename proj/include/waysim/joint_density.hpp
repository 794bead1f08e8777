#pragma once

#include <cmath>
#include <vector>

#include "waysim/density.hpp"
#include "waysim/errors.hpp"
#include "waysim/grid.hpp"

namespace waysim {

/// Nonnegative function on the (object position x, scaled outcome w)
/// grid with unit total mass. Row-major: vals[ix * w.n + iw].
class JointDensity {
public:
    JointDensity(GridSpec x_grid, GridSpec w_grid, std::vector<double> vals,
                 double mass_tol = 1e-4)
        : x_grid_(x_grid), w_grid_(w_grid), vals_(std::move(vals)) {
        require(vals_.size() == static_cast<std::size_t>(x_grid_.n) * static_cast<std::size_t>(w_grid_.n),
                "invalid-range", "joint value count does not match grids");
        double m = 0.0;
        double floor = 0.0;
        for (double v : vals_) {
            m += v;
            floor = std::min(floor, v);
        }
        m *= cell();
        require(floor >= -1e-12, "negative-density", "joint density has negative values");
        require(std::abs(m - 1.0) <= mass_tol, "mass-deficit",
                "joint density mass " + std::to_string(m) + " outside tolerance");
        const double scale = 1.0 / m;
        for (double& v : vals_) v = std::max(0.0, v) * scale;
    }

    const GridSpec& x_grid() const { return x_grid_; }
    const GridSpec& w_grid() const { return w_grid_; }
    double cell() const { return x_grid_.dx() * w_grid_.dx(); }
    double at(int ix, int iw) const {
        return vals_[static_cast<std::size_t>(ix) * static_cast<std::size_t>(w_grid_.n) +
                     static_cast<std::size_t>(iw)];
    }

    Density marginal_x() const {
        std::vector<double> m(static_cast<std::size_t>(x_grid_.n), 0.0);
        for (int ix = 0; ix < x_grid_.n; ++ix) {
            double acc = 0.0;
            for (int iw = 0; iw < w_grid_.n; ++iw) acc += at(ix, iw);
            m[static_cast<std::size_t>(ix)] = acc * w_grid_.dx();
        }
        return Density(x_grid_, std::move(m));
    }

    Density marginal_w() const {
        std::vector<double> m(static_cast<std::size_t>(w_grid_.n), 0.0);
        for (int ix = 0; ix < x_grid_.n; ++ix)
            for (int iw = 0; iw < w_grid_.n; ++iw)
                m[static_cast<std::size_t>(iw)] += at(ix, iw);
        for (double& v : m) v *= x_grid_.dx();
        return Density(w_grid_, std::move(m));
    }

    /// Mass of the band { |w - x| <= r }.
    double band_mass(double r) const {
        double acc = 0.0;
        for (int ix = 0; ix < x_grid_.n; ++ix) {
            const double x = x_grid_.node(ix);
            for (int iw = 0; iw < w_grid_.n; ++iw)
                if (std::abs(w_grid_.node(iw) - x) <= r) acc += at(ix, iw);
        }
        return acc * cell();
    }

private:
    GridSpec x_grid_, w_grid_;
    std::vector<double> vals_;
};

/// E[(w - x)^2]: the distributional second moment of the deviation
/// between calibrated outcome and true position.
inline double deviation_second_moment(const JointDensity& j) {
    double acc = 0.0;
    for (int ix = 0; ix < j.x_grid().n; ++ix) {
        const double x = j.x_grid().node(ix);
        for (int iw = 0; iw < j.w_grid().n; ++iw) {
            const double r = j.w_grid().node(iw) - x;
            acc += r * r * j.at(ix, iw);
        }
    }
    return acc * j.cell();
}

} // namespace waysim

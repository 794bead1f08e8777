#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "waysim/errors.hpp"
#include "waysim/fft.hpp"
#include "waysim/grid.hpp"
#include "waysim/numeric_policy.hpp"
#include "waysim/wavefunction.hpp"

namespace waysim {

/// Nonnegative real function on a grid with unit mass,
/// dx * sum vals[i] = 1. Construction normalizes; values that are
/// negative beyond roundoff are rejected.
class Density {
public:
    Density(GridSpec grid, std::vector<double> vals) : grid_(grid), vals_(std::move(vals)) {
        require(static_cast<int>(vals_.size()) == grid_.n, "invalid-range",
                "value count does not match grid size");
        double peak = 0.0;
        for (double v : vals_) peak = std::max(peak, std::abs(v));
        require(peak > 0.0 && std::isfinite(peak), "mass-deficit",
                "density is identically zero or non-finite");
        for (double& v : vals_) {
            if (v < 0.0) {
                require(v >= -1e-9 * peak, "negative-density",
                        "density has a genuinely negative value");
                v = 0.0;  // FFT / quadrature roundoff crumbs
            }
        }
        double m = 0.0;
        for (double v : vals_) m += v;
        m *= grid_.dx();
        const double scale = 1.0 / m;
        for (double& v : vals_) v *= scale;
    }

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& vals() const { return vals_; }
    double val(int i) const { return vals_[static_cast<std::size_t>(i)]; }
    int size() const { return grid_.n; }

    double value_at(double x) const {
        const double t = (x - grid_.node(0)) / grid_.dx();
        if (t < 0.0 || t > static_cast<double>(grid_.n - 1)) return 0.0;
        const int i = std::min(static_cast<int>(t), grid_.n - 2);
        const double w = t - static_cast<double>(i);
        return vals_[static_cast<std::size_t>(i)] * (1.0 - w) +
               vals_[static_cast<std::size_t>(i + 1)] * w;
    }

private:
    GridSpec grid_;
    std::vector<double> vals_;
};

inline double mass(const Density& d) {
    double m = 0.0;
    for (double v : d.vals()) m += v;
    return m * d.grid().dx();
}

inline double mean(const Density& d) {
    double m = 0.0;
    for (int i = 0; i < d.size(); ++i) m += d.grid().node(i) * d.val(i);
    return m * d.grid().dx();
}

inline double variance(const Density& d) {
    const double mu = mean(d);
    double v = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        const double r = d.grid().node(i) - mu;
        v += r * r * d.val(i);
    }
    return v * d.grid().dx();
}

inline double second_moment(const Density& d) {
    double v = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        const double x = d.grid().node(i);
        v += x * x * d.val(i);
    }
    return v * d.grid().dx();
}

namespace detail {

/// Cumulative mass function of a density, exact on the cell edges
/// (F(edge(0)) = 0, F(edge(k+1)) = dx * sum_{i<=k} vals[i]) and filled
/// in between by a monotone Hermite cubic with Fritsch-Carlson slopes.
/// Differences of F between edge-aligned points therefore reproduce
/// cell masses exactly, while sub-cell queries see a smooth, still
/// nondecreasing reconstruction instead of a staircase. Evaluations
/// clamp outside the grid.
class DensityCdf {
public:
    explicit DensityCdf(const Density& d)
        : grid_(d.grid()),
          cum_(static_cast<std::size_t>(d.size()) + 1, 0.0),
          deriv_(static_cast<std::size_t>(d.size()) + 1, 0.0) {
        const double dx = grid_.dx();
        const int n = d.size();
        for (int i = 0; i < n; ++i)
            cum_[static_cast<std::size_t>(i) + 1] = cum_[static_cast<std::size_t>(i)] + d.val(i) * dx;
        // edge slopes: harmonic mean of adjacent cell averages keeps the
        // cubic monotone (d <= 2 min of the neighbors)
        deriv_[0] = d.val(0);
        deriv_[static_cast<std::size_t>(n)] = d.val(n - 1);
        for (int i = 1; i < n; ++i) {
            const double a = d.val(i - 1), b = d.val(i);
            deriv_[static_cast<std::size_t>(i)] = (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
        }
    }

    double total() const { return cum_.back(); }

    double operator()(double x) const {
        const double dx = grid_.dx();
        const double t = (x - grid_.x_min) / dx;
        if (t <= 0.0) return 0.0;
        if (t >= static_cast<double>(grid_.n)) return total();
        const int i = static_cast<int>(t);
        const double u = t - static_cast<double>(i);
        const double u2 = u * u, u3 = u2 * u;
        const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        const double h10 = u3 - 2.0 * u2 + u;
        const double h01 = -2.0 * u3 + 3.0 * u2;
        const double h11 = u3 - u2;
        return h00 * cum_[static_cast<std::size_t>(i)] + h01 * cum_[static_cast<std::size_t>(i) + 1] +
               dx * (h10 * deriv_[static_cast<std::size_t>(i)] + h11 * deriv_[static_cast<std::size_t>(i) + 1]);
    }

    double interval_mass(double a, double b) const {
        if (b < a) std::swap(a, b);
        return (*this)(b) - (*this)(a);
    }

private:
    GridSpec grid_;
    std::vector<double> cum_;
    std::vector<double> deriv_;
};

} // namespace detail

inline Density density_of(const WaveFunction& psi) {
    std::vector<double> vals(static_cast<std::size_t>(psi.size()));
    for (int i = 0; i < psi.size(); ++i) vals[static_cast<std::size_t>(i)] = std::norm(psi.amp(i));
    return Density(psi.grid(), std::move(vals));
}

/// |psi-hat|^2 on the conjugate grid, with the unitary continuum
/// normalization psi-hat(k) = (2 pi)^{-1/2} integral psi(x) e^{-ikx} dx.
/// The discrete Plancherel identity makes the result's mass exactly the
/// input's norm, so no renormalization error enters.
inline Density momentum_density(const WaveFunction& psi) {
    require(psi.boundary_clean(), "boundary-leakage",
            "state has non-negligible amplitude at the grid boundary");
    const int n = psi.size();
    std::vector<cdouble> work(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;  // centers the k lattice on 0
        work[static_cast<std::size_t>(i)] = psi.amp(i) * sgn;
    }
    detail::fft_radix2(work, -1);
    const GridSpec kgrid = psi.grid().conjugate();
    const double scale = psi.grid().dx() * psi.grid().dx() / (2.0 * M_PI);
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(j)] = scale * std::norm(work[static_cast<std::size_t>(j)]);
    return Density(kgrid, std::move(vals));
}

/// Length of the smallest grid-aligned interval holding mass >= 1 - eps.
/// Two-pointer sliding window over cells, O(n); resolution is one cell.
inline double overall_width(const Density& d, double eps) {
    require(eps > 0.0 && eps < 1.0, "invalid-eps", "confidence parameter must be in (0,1)");
    const double dx = d.grid().dx();
    const double target = (1.0 - eps) * mass(d);
    int best = d.size();
    int lo = 0;
    double window = 0.0;
    for (int hi = 0; hi < d.size(); ++hi) {
        window += d.val(hi) * dx;
        while (window - d.val(lo) * dx >= target) {
            window -= d.val(lo) * dx;
            ++lo;
        }
        if (window >= target) best = std::min(best, hi - lo + 1);
    }
    return static_cast<double>(best) * dx;
}

/// Convolution of two unit-mass densities on equal-spacing grids.
/// Output nodes are sums of input nodes; mass, mean and variance add
/// exactly in the discrete algebra.
inline Density convolve(const Density& a, const Density& b) {
    require(a.grid().same_spacing(b.grid()), "grid-mismatch",
            "convolution requires equal grid spacing");
    const double dx = a.grid().dx();
    std::vector<double> vals = detail::convolve_real(a.vals(), b.vals());
    for (double& v : vals) v *= dx;
    const int n_out = next_power_of_two(static_cast<int>(vals.size()));
    vals.resize(static_cast<std::size_t>(n_out), 0.0);
    const double x_min = a.grid().x_min + b.grid().x_min + 0.5 * dx;
    const GridSpec g{x_min, x_min + n_out * dx, n_out};
    return Density(g, std::move(vals));
}

/// vals'(x) = vals(-x): exact relabeling, no interpolation.
inline Density reflect(const Density& d) {
    std::vector<double> vals(d.vals().rbegin(), d.vals().rend());
    const GridSpec g{-d.grid().x_max, -d.grid().x_min, d.grid().n};
    return Density(g, std::move(vals));
}

/// Density of y = a*x + b when x ~ d, binned onto the target grid by
/// exact cell-mass transfer through the cumulative function. Handles
/// contractions far below one cell (the mass piles into the right cell).
inline Density pushforward_affine(const Density& d, double a, double b, const GridSpec& target,
                                  double lost_mass_tol = 1e-6) {
    require(a != 0.0, "invalid-range", "affine pushforward needs a != 0");
    const detail::DensityCdf F(d);
    std::vector<double> vals(static_cast<std::size_t>(target.n));
    double captured = 0.0;
    const double dt = target.dx();
    for (int k = 0; k < target.n; ++k) {
        const double u0 = (target.edge(k) - b) / a;
        const double u1 = (target.edge(k + 1) - b) / a;
        const double m = F.interval_mass(u0, u1);
        vals[static_cast<std::size_t>(k)] = m / dt;
        captured += m;
    }
    require(std::abs(captured - F.total()) <= lost_mass_tol, "leakage",
            "pushforward target grid misses mass " + std::to_string(F.total() - captured));
    return Density(target, std::move(vals));
}

/// Natural target for an affine pushforward: the image of the source
/// span with spacing target_dx, padded to a power-of-two cell count.
inline GridSpec affine_image_grid(const GridSpec& src, double a, double b, double target_dx) {
    const double i0 = a * src.x_min + b;
    const double i1 = a * src.x_max + b;
    const double lo = std::min(i0, i1);
    const double hi = std::max(i0, i1);
    const int n = next_power_of_two(static_cast<int>(std::ceil((hi - lo) / target_dx)) + 2);
    const double pad = (n * target_dx - (hi - lo)) / 2.0;
    return GridSpec{lo - pad, lo - pad + n * target_dx, n};
}

inline Density pushforward_affine(const Density& d, double a, double b, double target_dx) {
    return pushforward_affine(d, a, b, affine_image_grid(d.grid(), a, b, target_dx));
}

/// Rebin onto another grid (mass-conservative).
inline Density resample(const Density& d, const GridSpec& target, double lost_mass_tol = 1e-6) {
    return pushforward_affine(d, 1.0, 0.0, target, lost_mass_tol);
}

/// m(x) = integral |phi(x + x')|^2 e(x') dx' = (obj * reflect(e))(x):
/// the outcome distribution produced by inaccuracy density e acting on
/// the ideal distribution obj.
inline Density smear(const Density& obj, const Density& e) {
    require(obj.grid().same_spacing(e.grid()), "grid-mismatch",
            "smear requires equal grid spacing; resample the error density first");
    return convolve(obj, reflect(e));
}

/// L1 distance between two densities regarded as measures: compares
/// interval masses over a shared partition at the finer of the two
/// spacings. Insensitive to grid alignment.
inline double l1_distance(const Density& p, const Density& q) {
    const detail::DensityCdf Fp(p), Fq(q);
    const double h = std::min(p.grid().dx(), q.grid().dx());
    const double lo = std::min(p.grid().x_min, q.grid().x_min);
    const double hi = std::max(p.grid().x_max, q.grid().x_max);
    const int cells = static_cast<int>(std::ceil((hi - lo) / h));
    double acc = 0.0;
    for (int k = 0; k < cells; ++k) {
        const double a = lo + k * h;
        const double b = std::min(hi, a + h);
        acc += std::abs(Fp.interval_mass(a, b) - Fq.interval_mass(a, b));
    }
    return acc;
}

/// Smallest edge-aligned interval holding every value above
/// rel_threshold * peak: the mass-bearing region for grid sizing.
inline std::pair<double, double> effective_support(const Density& d,
                                                   double rel_threshold = 1e-12) {
    double peak = 0.0;
    for (double v : d.vals()) peak = std::max(peak, v);
    const double cut = rel_threshold * peak;
    int lo = 0, hi = d.size() - 1;
    while (lo < d.size() - 1 && d.val(lo) <= cut) ++lo;
    while (hi > 0 && d.val(hi) <= cut) --hi;
    return {d.grid().edge(lo), d.grid().edge(hi + 1)};
}

/// Density concentrated in the single cell nearest x0; the grid-level
/// stand-in for a delta function.
inline Density spike_density(const GridSpec& grid, double x0) {
    std::vector<double> vals(static_cast<std::size_t>(grid.n), 0.0);
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n; ++i) {
        const double dist = std::abs(grid.node(i) - x0);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    vals[static_cast<std::size_t>(best)] = 1.0 / grid.dx();
    return Density(grid, std::move(vals));
}

} // namespace waysim

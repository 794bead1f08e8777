#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "waysim/density.hpp"
#include "waysim/errors.hpp"
#include "waysim/joint_density.hpp"
#include "waysim/wavefunction.hpp"

namespace waysim::ozawa {

/// Four-particle coupling: positions Q, Q_A and the pointer pair read
/// out through the relative momentum Z = P_C - P_B. The initial
/// apparatus state factorizes as Phi1(y) Phi2(u) phi_v(v), with y the
/// reference position Q_A, u the pointer variable, and v the total
/// momentum P_B + P_C of the pointer pair. The coupling shifts the
/// pointer by -(lambda/2)(x - y) and leaves everything else alone; the
/// v mode never enters the outcome statistics but carries apparatus
/// momentum, so it stays in the bookkeeping.
struct Probe {
    WaveFunction phi1;   // reference position wavefunction, variable y
    WaveFunction phi2;   // pointer wavefunction, variable u
    WaveFunction phi_v;  // spectator mode, variable v (already momentum-space)
};

struct Params {
    double lambda = 1.0;  // K * tau

    explicit Params(double l) : lambda(l) {
        require(l > 0.0, "lambda-too-small", "coupling lambda must be positive");
    }
};

/// Amplitude factor Phi1(y) * Phi2(u + (lambda/2)(x - y)) of the evolved
/// state; the object and spectator factors are handled by callers.
inline cdouble evolved_component(const Probe& probe, double lambda, double x, double y, double u) {
    return probe.phi1.value_at(y) * probe.phi2.value_at(u + 0.5 * lambda * (x - y));
}

/// Calibration from raw pointer value u to a position estimate.
inline double scaling_function(double lambda, double u) { return -(2.0 / lambda) * u; }

namespace detail {

inline void check_normalized(const WaveFunction& psi, const char* label) {
    // WaveFunction normalizes on construction; this guards against
    // hand-built states routed around the constructor invariant.
    double m = 0.0;
    for (const auto& a : psi.amps()) m += std::norm(a);
    m *= psi.grid().dx();
    require(std::abs(m - 1.0) <= 1e-6, "non-normalized-input",
            std::string(label) + " is not normalized");
}

} // namespace detail

/// Raw pointer readings live where u0 - (lambda/2)(x - y) can land, so
/// the u grid has to widen with lambda. Spacing follows Phi2's grid.
inline GridSpec default_pointer_grid(const WaveFunction& obj, const Probe& probe, double lambda) {
    const auto sx = effective_support(density_of(obj));
    const auto sy = effective_support(density_of(probe.phi1));
    const auto su = effective_support(density_of(probe.phi2));
    const double lo = su.first - 0.5 * lambda * (sx.second - sy.first);
    const double hi = su.second - 0.5 * lambda * (sx.first - sy.second);
    const double du = probe.phi2.grid().dx();
    const int n = next_power_of_two(static_cast<int>(std::ceil((hi - lo) / du)) + 4);
    const double pad = (n * du - (hi - lo)) / 2.0;
    return GridSpec{lo - pad, lo - pad + n * du, n};
}

/// Pointer distribution p(u) by direct quadrature of the evolved state:
/// p(u) = integral |phi(x)|^2 |Phi1(y)|^2 |Phi2(u + (lambda/2)(x-y))|^2 dx dy.
/// The shifted Phi2 cell masses are read off the cumulative function, so
/// the result keeps unit mass even for probes narrower than a cell.
/// This is the brute-force oracle the closed forms are checked against.
inline Density pointer_density_numeric(const WaveFunction& obj, const Probe& probe, double lambda,
                                       const GridSpec& u_grid, double mass_tol = 1e-4) {
    Params params(lambda);
    detail::check_normalized(obj, "object state");
    detail::check_normalized(probe.phi1, "phi1");
    detail::check_normalized(probe.phi2, "phi2");

    const Density rho_obj = density_of(obj);
    const Density rho1 = density_of(probe.phi1);
    const Density rho2 = density_of(probe.phi2);
    const waysim::detail::DensityCdf F2(rho2);
    const double u2_lo = rho2.grid().x_min;
    const double u2_hi = rho2.grid().x_max;

    const double du = u_grid.dx();
    std::vector<double> p(static_cast<std::size_t>(u_grid.n), 0.0);

    // weights below 1e-15 of the peak cannot move any tracked tolerance
    double peak_x = 0.0, peak_y = 0.0;
    for (double v : rho_obj.vals()) peak_x = std::max(peak_x, v);
    for (double v : rho1.vals()) peak_y = std::max(peak_y, v);
    const double cut_x = 1e-15 * peak_x * rho_obj.grid().dx();
    const double cut_y = 1e-15 * peak_y * rho1.grid().dx();

    auto accumulate_shift = [&](double shift, double weight) {
        // only u cells whose shifted image meets Phi2's grid contribute
        int iu_lo = static_cast<int>(std::floor((u2_lo - shift - u_grid.x_min) / du)) - 1;
        int iu_hi = static_cast<int>(std::ceil((u2_hi - shift - u_grid.x_min) / du)) + 1;
        iu_lo = std::max(iu_lo, 0);
        iu_hi = std::min(iu_hi, u_grid.n);
        if (iu_lo >= iu_hi) return;
        double f_prev = F2(u_grid.edge(iu_lo) + shift);
        for (int iu = iu_lo; iu < iu_hi; ++iu) {
            const double f_next = F2(u_grid.edge(iu + 1) + shift);
            p[static_cast<std::size_t>(iu)] += weight * (f_next - f_prev);
            f_prev = f_next;
        }
    };

    if (rho_obj.grid().same_spacing(rho1.grid())) {
        // the integrand depends on (x, y) only through x - y, which on
        // equal-spacing grids takes nx + ny - 1 lattice values; grouping
        // the quadrature weights by that difference is an exact
        // regrouping of the double sum
        const int nx = rho_obj.size(), ny = rho1.size();
        std::vector<double> corr(static_cast<std::size_t>(nx + ny - 1), 0.0);
        for (int ix = 0; ix < nx; ++ix) {
            const double wx = rho_obj.val(ix) * rho_obj.grid().dx();
            if (wx <= cut_x) continue;
            for (int iy = 0; iy < ny; ++iy) {
                const double wy = rho1.val(iy) * rho1.grid().dx();
                if (wy <= cut_y) continue;
                corr[static_cast<std::size_t>(ix - iy + ny - 1)] += wx * wy;
            }
        }
        const double base = rho_obj.grid().node(0) - rho1.grid().node(ny - 1);
        for (int k = 0; k < nx + ny - 1; ++k) {
            if (corr[static_cast<std::size_t>(k)] == 0.0) continue;
            const double shift =
                0.5 * params.lambda * (base + static_cast<double>(k) * rho_obj.grid().dx());
            accumulate_shift(shift, corr[static_cast<std::size_t>(k)]);
        }
    } else {
        for (int ix = 0; ix < rho_obj.size(); ++ix) {
            const double wx = rho_obj.val(ix) * rho_obj.grid().dx();
            if (wx <= cut_x) continue;
            const double x = rho_obj.grid().node(ix);
            for (int iy = 0; iy < rho1.size(); ++iy) {
                const double wy = rho1.val(iy) * rho1.grid().dx();
                if (wy <= cut_y) continue;
                accumulate_shift(0.5 * params.lambda * (x - rho1.grid().node(iy)), wx * wy);
            }
        }
    }
    for (double& v : p) v /= du;
    double m = 0.0;
    for (double v : p) m += v * du;
    require(std::abs(m - 1.0) <= mass_tol, "leakage",
            "pointer mass " + std::to_string(m) + " lost past the u grid");
    return Density(u_grid, std::move(p));
}

inline Density pointer_density_numeric(const WaveFunction& obj, const Probe& probe, double lambda,
                                       double mass_tol = 1e-4) {
    return pointer_density_numeric(obj, probe, lambda, default_pointer_grid(obj, probe, lambda),
                                   mass_tol);
}

/// Inaccuracy density of the calibrated measurement:
/// e = |Phi1|^2 conv h with h(s) = (lambda/2) |Phi2((lambda/2) s)|^2.
/// The (lambda/2) change of variables is the one forced by the evolved
/// state together with the calibration u -> -(2/lambda) u; it yields
/// Var(e) = Var|Phi1|^2 + (4/lambda^2) Var|Phi2|^2 and makes
/// smear(|phi|^2, e) reproduce the scaled outcome statistics for
/// asymmetric probes as well.
inline Density error_density(const Probe& probe, double lambda, double target_dx = 0.0) {
    Params params(lambda);
    const Density rho1 = density_of(probe.phi1);
    const Density rho2 = density_of(probe.phi2);
    const double dx = target_dx > 0.0 ? target_dx : rho1.grid().dx();
    const Density h = pushforward_affine(rho2, 2.0 / params.lambda, 0.0, dx);
    if (std::abs(rho1.grid().dx() - dx) <= 1e-9 * dx) return convolve(rho1, h);
    return convolve(resample(rho1, affine_image_grid(rho1.grid(), 1.0, 0.0, dx)), h);
}

/// Outcome density on the position scale: pushforward of the pointer
/// distribution through w = -(2/lambda) u.
inline Density scaled_outcome_density(const WaveFunction& obj, const Probe& probe, double lambda,
                                      double mass_tol = 1e-4) {
    const Density p = pointer_density_numeric(obj, probe, lambda, mass_tol);
    const double a = -2.0 / lambda;
    return pushforward_affine(p, a, 0.0,
                              affine_image_grid(p.grid(), a, 0.0, obj.grid().dx()), mass_tol);
}

/// (variance of e^(lambda), variance|Phi1|^2 + (4/lambda^2) variance|Phi2|^2).
inline std::pair<double, double> variance_identity_check(const Probe& probe, double lambda) {
    const double lhs = variance(error_density(probe, lambda));
    const double rhs = variance(density_of(probe.phi1)) +
                       (4.0 / (lambda * lambda)) * variance(density_of(probe.phi2));
    return {lhs, rhs};
}

enum class JointMethod { automatic, quadrature, closed_form };

/// Joint density of (object position x, calibrated outcome w).
/// Quadrature path: q(w|x) by midpoint integration over y for every
/// (x, w) cell. Closed-form path: the conditional outcome depends on
/// w - x only, through the reflected inaccuracy density. The automatic
/// mode keeps quadrature whenever the rescaled pointer density is still
/// resolvable on the y grid; for very large lambda the integrand
/// collapses below one cell and the closed form takes over.
inline JointDensity joint_object_outcome_density(const WaveFunction& obj, const Probe& probe,
                                                 double lambda, const GridSpec& w_grid,
                                                 JointMethod method = JointMethod::automatic,
                                                 double mass_tol = 1e-4) {
    Params params(lambda);
    const Density rho_obj = density_of(obj);
    const Density rho1 = density_of(probe.phi1);
    const Density rho2 = density_of(probe.phi2);

    if (method == JointMethod::automatic) {
        const double rescaled_span = (2.0 / lambda) * rho2.grid().span();
        method = rescaled_span >= 4.0 * rho1.grid().dx() ? JointMethod::quadrature
                                                         : JointMethod::closed_form;
    }

    const int nx = rho_obj.size();
    const int nw = w_grid.n;
    std::vector<double> vals(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nw), 0.0);

    if (method == JointMethod::quadrature) {
        // q(w|x) = (lambda/2) integral |Phi1(y)|^2 |Phi2(-(lambda/2)(w - x + y))|^2 dy,
        // with the Phi2 factor evaluated as a w-cell average so box edges
        // keep their mass.
        const waysim::detail::DensityCdf F2(rho2);
        const double dw = w_grid.dx();
        const double s2_lo = rho2.grid().x_min;
        const double s2_hi = rho2.grid().x_max;
        double peak_x = 0.0, peak_y = 0.0;
        for (double v : rho_obj.vals()) peak_x = std::max(peak_x, v);
        for (double v : rho1.vals()) peak_y = std::max(peak_y, v);
        const double cut_x = 1e-15 * peak_x;
        const double cut_y = 1e-15 * peak_y * rho1.grid().dx();
        for (int ix = 0; ix < nx; ++ix) {
            const double px = rho_obj.val(ix);
            if (px <= cut_x) continue;
            const double x = rho_obj.grid().node(ix);
            for (int iy = 0; iy < rho1.size(); ++iy) {
                const double wy = rho1.val(iy) * rho1.grid().dx();
                if (wy <= cut_y) continue;
                const double y = rho1.grid().node(iy);
                const double pxy = px * wy;
                // w cells with -(lambda/2)(w - x + y) inside Phi2's grid;
                // u decreases as w increases, so chain the CDF reads
                const double w_a = x - y - (2.0 / lambda) * s2_hi;
                const double w_b = x - y - (2.0 / lambda) * s2_lo;
                int iw_lo = static_cast<int>(std::floor((w_a - w_grid.x_min) / dw)) - 1;
                int iw_hi = static_cast<int>(std::ceil((w_b - w_grid.x_min) / dw)) + 1;
                iw_lo = std::max(iw_lo, 0);
                iw_hi = std::min(iw_hi, nw);
                if (iw_lo >= iw_hi) continue;
                double f_hi = F2(-0.5 * lambda * (w_grid.edge(iw_lo) - x + y));
                for (int iw = iw_lo; iw < iw_hi; ++iw) {
                    const double f_lo = F2(-0.5 * lambda * (w_grid.edge(iw + 1) - x + y));
                    vals[static_cast<std::size_t>(ix) * static_cast<std::size_t>(nw) +
                         static_cast<std::size_t>(iw)] += pxy * (f_hi - f_lo) / dw;
                    f_hi = f_lo;
                }
            }
        }
    } else {
        const Density e = error_density(probe, lambda);
        const waysim::detail::DensityCdf Fe(e);
        const double dw = w_grid.dx();
        for (int ix = 0; ix < nx; ++ix) {
            const double px = rho_obj.val(ix);
            if (px == 0.0) continue;
            const double x = rho_obj.grid().node(ix);
            for (int iw = 0; iw < nw; ++iw) {
                // P(w in cell | x) = mass of e over the reflected cell (x - w)
                const double t0 = x - w_grid.edge(iw + 1);
                const double t1 = x - w_grid.edge(iw);
                vals[static_cast<std::size_t>(ix) * static_cast<std::size_t>(nw) +
                     static_cast<std::size_t>(iw)] = px * Fe.interval_mass(t0, t1) / dw;
            }
        }
    }
    return JointDensity(rho_obj.grid(), w_grid, std::move(vals), mass_tol);
}

} // namespace waysim::ozawa

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "waysim/density.hpp"
#include "waysim/errors.hpp"
#include "waysim/joint_density.hpp"
#include "waysim/wavefunction.hpp"

namespace waysim::alt {

/// Two-particle coupling whose generator contains only the probe
/// momentum, so the object position is conserved while the probe
/// position Q_A itself serves as the pointer. The readout scale grows
/// like e^lambda - 1, which is what buys exponential accuracy.
struct Probe {
    WaveFunction probe;  // probe position wavefunction, variable y
};

struct Params {
    double lambda = 1.0;

    explicit Params(double l) : lambda(l) {
        require(l > 1e-9, "lambda-too-small",
                "coupling lambda must exceed 1e-9 (calibration is singular at 0)");
    }
};

/// Calibration from pointer value y to a position estimate.
inline double scaling_function(double lambda, double y) { return y / (1.0 - std::exp(-lambda)); }

/// Final two-particle state Psi(x, y) = e^{lambda/2} phi(x)
/// probe(y e^lambda - x (e^lambda - 1)) sampled on x_grid x y_grid
/// (row-major). The exponential contraction in y means y_grid usually
/// needs to be finer than the probe's own grid; pick it with
/// recommended_y_grid.
struct FinalState {
    GridSpec x_grid, y_grid;
    std::vector<cdouble> amps;

    cdouble at(int ix, int iy) const {
        return amps[static_cast<std::size_t>(ix) * static_cast<std::size_t>(y_grid.n) +
                    static_cast<std::size_t>(iy)];
    }

    double norm_sq() const {
        double m = 0.0;
        for (const auto& a : amps) m += std::norm(a);
        return m * x_grid.dx() * y_grid.dx();
    }
};

/// y grid fine enough to resolve the probe contracted by e^{-lambda}:
/// the contracted envelope gets >= 16 cells, capped at 2^13 cells.
inline GridSpec recommended_y_grid(const GridSpec& x_grid, const GridSpec& probe_grid,
                                   double lambda) {
    const double contracted = probe_grid.span() * std::exp(-lambda);
    const double dy_wanted = contracted / 16.0;
    int n = x_grid.n;
    while (x_grid.span() / n > dy_wanted && n < 8192) n *= 2;
    return GridSpec{x_grid.x_min, x_grid.x_max, n};
}

inline FinalState final_state(const WaveFunction& obj, const Probe& probe, double lambda,
                              const GridSpec& y_grid) {
    Params params(lambda);
    const double el = std::exp(params.lambda);
    const double amp_scale = std::exp(0.5 * params.lambda);
    FinalState st{obj.grid(), y_grid, {}};
    st.amps.resize(static_cast<std::size_t>(obj.size()) * static_cast<std::size_t>(y_grid.n));
    for (int ix = 0; ix < obj.size(); ++ix) {
        const cdouble ax = obj.amp(ix) * amp_scale;
        const double x = obj.grid().node(ix);
        for (int iy = 0; iy < y_grid.n; ++iy) {
            const double arg = y_grid.node(iy) * el - x * (el - 1.0);
            st.amps[static_cast<std::size_t>(ix) * static_cast<std::size_t>(y_grid.n) +
                    static_cast<std::size_t>(iy)] = ax * probe.probe.value_at(arg);
        }
    }
    return st;
}

inline FinalState final_state(const WaveFunction& obj, const Probe& probe, double lambda) {
    return final_state(obj, probe, lambda,
                       recommended_y_grid(obj.grid(), probe.probe.grid(), lambda));
}

/// Pointer distribution p(y) = integral |phi(x)|^2 e^lambda
/// |probe(y e^lambda - x(e^lambda - 1))|^2 dx by direct quadrature.
/// The probe factor is integrated over each y cell through its
/// cumulative function, which keeps unit mass even when e^lambda
/// contracts the probe far below the y spacing. Oracle path.
inline Density pointer_density_numeric(const WaveFunction& obj, const Probe& probe, double lambda,
                                       const GridSpec& y_grid, double mass_tol = 1e-4) {
    Params params(lambda);
    const double el = std::exp(params.lambda);
    const Density rho_obj = density_of(obj);
    const Density rho_p = density_of(probe.probe);
    const waysim::detail::DensityCdf Fp(rho_p);

    const double dy = y_grid.dx();
    const double p_lo = rho_p.grid().x_min;
    const double p_hi = rho_p.grid().x_max;
    std::vector<double> p(static_cast<std::size_t>(y_grid.n), 0.0);
    for (int ix = 0; ix < rho_obj.size(); ++ix) {
        const double wx = rho_obj.val(ix) * rho_obj.grid().dx();
        if (wx == 0.0) continue;
        const double off = rho_obj.grid().node(ix) * (el - 1.0);
        // y cells whose image y e^lambda - off meets the probe grid
        int iy_lo = static_cast<int>(std::floor(((p_lo + off) / el - y_grid.x_min) / dy)) - 1;
        int iy_hi = static_cast<int>(std::ceil(((p_hi + off) / el - y_grid.x_min) / dy)) + 1;
        iy_lo = std::max(iy_lo, 0);
        iy_hi = std::min(iy_hi, y_grid.n);
        for (int iy = iy_lo; iy < iy_hi; ++iy) {
            const double a0 = y_grid.edge(iy) * el - off;
            const double a1 = y_grid.edge(iy + 1) * el - off;
            // (1/e^lambda) * e^lambda cancels: cell mass is just the CDF gap
            p[static_cast<std::size_t>(iy)] += wx * Fp.interval_mass(a0, a1);
        }
    }
    for (double& v : p) v /= dy;
    double m = 0.0;
    for (double v : p) m += v * dy;
    require(std::abs(m - 1.0) <= mass_tol, "leakage",
            "pointer mass " + std::to_string(m) + " lost past the y grid");
    return Density(y_grid, std::move(p));
}

inline Density pointer_density_numeric(const WaveFunction& obj, const Probe& probe, double lambda,
                                       double mass_tol = 1e-4) {
    return pointer_density_numeric(obj, probe, lambda, obj.grid(), mass_tol);
}

/// Outcome density on the position scale: pushforward of the pointer
/// distribution through w = y / (1 - e^{-lambda}).
inline Density scaled_outcome_density(const WaveFunction& obj, const Probe& probe, double lambda,
                                      double mass_tol = 1e-4) {
    Params params(lambda);
    const Density p = pointer_density_numeric(obj, probe, lambda, mass_tol);
    const double a = 1.0 / (1.0 - std::exp(-params.lambda));
    return pushforward_affine(p, a, 0.0,
                              affine_image_grid(p.grid(), a, 0.0, obj.grid().dx()), mass_tol);
}

/// Closed-form inaccuracy density
/// e(t) = (e^lambda - 1) |probe(-t (e^lambda - 1))|^2: a pure reflection
/// and rescale of the probe density, so it is built by exact relabeling
/// on the correspondingly scaled grid. Its width shrinks like e^{-lambda}
/// with no lower bound.
inline Density error_density(const Probe& probe, double lambda) {
    Params params(lambda);
    const double scale = 1.0 / (std::exp(params.lambda) - 1.0);
    const Density rho_p = density_of(probe.probe);
    const Density refl = reflect(rho_p);
    std::vector<double> vals(refl.vals());
    for (double& v : vals) v /= scale;  // density gains the inverse Jacobian
    const GridSpec g{refl.grid().x_min * scale, refl.grid().x_max * scale, refl.grid().n};
    return Density(g, std::move(vals));
}

/// Joint density of (x, w) from the closed-form final state:
/// p(x, w) = |phi(x)|^2 (e^lambda - 1) |probe((e^lambda - 1)(w - x))|^2,
/// with the probe factor integrated over each w cell.
inline JointDensity joint_object_outcome_density(const WaveFunction& obj, const Probe& probe,
                                                 double lambda, const GridSpec& w_grid,
                                                 double mass_tol = 1e-4) {
    Params params(lambda);
    const double em1 = std::exp(params.lambda) - 1.0;
    const Density rho_obj = density_of(obj);
    const Density rho_p = density_of(probe.probe);
    const waysim::detail::DensityCdf Fp(rho_p);

    const int nx = rho_obj.size();
    const int nw = w_grid.n;
    const double dw = w_grid.dx();
    const double p_lo = rho_p.grid().x_min;
    const double p_hi = rho_p.grid().x_max;
    std::vector<double> vals(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nw), 0.0);
    for (int ix = 0; ix < nx; ++ix) {
        const double px = rho_obj.val(ix);
        if (px == 0.0) continue;
        const double x = rho_obj.grid().node(ix);
        int iw_lo = static_cast<int>(std::floor((x + p_lo / em1 - w_grid.x_min) / dw)) - 1;
        int iw_hi = static_cast<int>(std::ceil((x + p_hi / em1 - w_grid.x_min) / dw)) + 1;
        iw_lo = std::max(iw_lo, 0);
        iw_hi = std::min(iw_hi, nw);
        for (int iw = iw_lo; iw < iw_hi; ++iw) {
            const double a0 = em1 * (w_grid.edge(iw) - x);
            const double a1 = em1 * (w_grid.edge(iw + 1) - x);
            vals[static_cast<std::size_t>(ix) * static_cast<std::size_t>(nw) +
                 static_cast<std::size_t>(iw)] = px * Fp.interval_mass(a0, a1) / dw;
        }
    }
    return JointDensity(rho_obj.grid(), w_grid, std::move(vals), mass_tol);
}

} // namespace waysim::alt

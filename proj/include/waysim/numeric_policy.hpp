#pragma once

namespace waysim {

/// Central tolerance knobs shared by the verification checks. Grid
/// refinement studies tune this one record instead of scattered
/// constants.
struct NumericPolicy {
    double mass_tol = 1e-6;          // unit-mass defect allowed for derived densities
    double quadrature_mass_tol = 1e-4;  // looser budget for brute-force quadrature outputs
    double moment_abs_tol = 1e-4;    // absolute tolerance on means/variances
    double moment_rel_tol = 1e-2;    // relative tolerance on means/variances
    double width_slack_cells = 2.0;  // overall-width comparisons allow +/- this many cells
    double oracle_l1_tol = 1e-3;     // L1 gap between quadrature and closed-form statistics
    double bound_slack = 2e-2;       // relative slack when checking inequality bounds
    double boundary_rel_amp = 1e-6;  // max relative amplitude in the outer 2% of a grid
    double boundary_fraction = 0.02;
};

inline const NumericPolicy& default_policy() {
    static const NumericPolicy p{};
    return p;
}

} // namespace waysim

#pragma once

// Momentum-conserving position-measurement models on 1D grids:
// inaccuracy densities, repeatability widths, and the error bounds
// tying measurement quality to the apparatus momentum spread.

#include "waysim/alt_model.hpp"
#include "waysim/checks.hpp"
#include "waysim/density.hpp"
#include "waysim/errors.hpp"
#include "waysim/grid.hpp"
#include "waysim/joint_density.hpp"
#include "waysim/numeric_policy.hpp"
#include "waysim/ozawa_model.hpp"
#include "waysim/probe_family.hpp"
#include "waysim/repeatability.hpp"
#include "waysim/sweep.hpp"
#include "waysim/version.hpp"
#include "waysim/wavefunction.hpp"
#include "waysim/way_bounds.hpp"

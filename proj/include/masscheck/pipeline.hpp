#pragma once

#include "masscheck/report.hpp"
#include "masscheck/scenario.hpp"

namespace masscheck {

/// Corner positive-mass pipeline: glue the scenario's interior ball to its
/// exterior, smooth the corner at each sweep width, absorb the negative part
/// of the smoothed curvature into a conformal change, and verify that the
/// corrected curvature is nonnegative and the corrected mass stays above the
/// floor. A corner with mean-curvature jump of the wrong sign yields
/// HYPOTHESIS-VIOLATED; solver failures are recorded per width and the sweep
/// continues (all widths failing yields INCONCLUSIVE).
Report run_corner_positive_mass(const Scenario& sc, unsigned jobs = 1);

/// Boundary-data pipeline: Brown-York mass of the round data, scalar-flat
/// exterior extension, fill-in curvature check, and the corner pipeline on
/// the glued manifold; optionally gated by a shield check for truncated
/// fill-ins (failing shield yields INCONCLUSIVE).
Report run_shi_tam(const Scenario& sc, unsigned jobs = 1);

/// Dispatches on the scenario's pipeline kind.
Report run_scenario(const Scenario& sc, unsigned jobs = 1);

}  // namespace masscheck

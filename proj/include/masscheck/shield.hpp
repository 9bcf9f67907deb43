#pragma once

#include <cstddef>
#include <vector>

#include "masscheck/geometry.hpp"

namespace masscheck {

struct Interval {
    double a;
    double b;
    double length() const { return b - a; }
};

/// Nested regions U2 inside U1 inside U0, all anchored at the outer end of
/// the profile, with a scalar-curvature floor kappa on U1 \ U2 and a mean
/// curvature bound eta at the inner boundary of U0.
struct ShieldSpec {
    Interval u0, u1, u2;
    double kappa;
    double eta;
};

struct ShieldItem {
    bool passed;
    double margin;  // nonnegative iff the item holds, by how much
};

/// Itemized report over the shield region, with the gap widths
/// D0 = dist(dU0, U1) and D1 = dist(dU1, U2):
///  (1) nonnegative:     R >= 0 at every sample of U0 (tolerance 1e-10);
///  (2) curvature_floor: R >= kappa on the closure of U1 \ U2;
///  (3) boundary_bound:  mean curvature of dU0 (normal into U0) <= eta;
///  (4) width:           D0 > 4 / (kappa D1) - 2 / eta.
struct ShieldReport {
    ShieldItem nonnegative;
    ShieldItem curvature_floor;
    ShieldItem boundary_bound;
    ShieldItem width;
    double d0;
    double d1;
    bool all() const {
        return nonnegative.passed && curvature_floor.passed &&
               boundary_bound.passed && width.passed;
    }
};

/// Throws on malformed input (regions outside the grid, not anchored at the
/// outer end, broken nesting, nonpositive kappa or eta).
ShieldReport check_shield(const ProfileMetric& m, const ShieldSpec& spec);

/// Linear ramp of the comparison radius across the outermost band:
/// rho(s) = rho_start + rho_slope (s - band.a) for s in the band, which must
/// sit inside U2 and reach the outer end.
struct BandSpec {
    Interval band;
    double rho_start;
    double rho_slope;
    double L;  // band scale entering the tangent profile
};

/// Comparison weight for the shielding argument, sampled on the profile grid
/// restricted to U0 and decreasing from the inner boundary to the outer end:
///  - on the band: h = -sqrt(kappa) tan(sqrt(kappa) rho / (2L)), with an
///    infinite sentinel once the argument leaves (-pi/2, pi/2);
///  - on U2 before the band: the constant h_k (the band value at its start);
///  - case 1 (|h_k| < 2/alpha): h = +2/(alpha - rho) on U0 \ U1 (rho the
///    distance to dU1, so the weight walls off the inner boundary), bridged
///    to h_k across U1 \ U2 by a C^1 ramp whose peak slope is within 8
///    percent of the mean slope;
///  - case 2 (|h_k| >= 2/alpha): the constant h_k across U1 \ U2 and the
///    barrier profile on U0 \ U1 shifted, on the sign branch of h_k, to stay
///    continuous at dU1.
struct MuWeight {
    std::vector<double> s;
    std::vector<double> value;
    std::vector<double> grad;
    std::vector<bool> finite;
    int case_id;   // 1 or 2
    double alpha;
    double h_k;
};

/// alpha < 0 selects the default 1.05 * 4 / (kappa D1).
MuWeight build_mu_weight(const ProfileMetric& m, const ShieldSpec& spec,
                         const BandSpec& band, double alpha = -1.0);

/// Pointwise margin of the comparison inequality,
///   margin(s) = R(s) + h(s)^2 - 2 |h'(s)|,
/// minimized over the finite samples of the weight. A positive minimum
/// certifies the weight.
struct WeightCheck {
    double min_margin;
    double argmin_s;
    bool finite_everywhere;
};

WeightCheck verify_weight(const ProfileMetric& m, const MuWeight& weight);

/// Barrier test at the inner boundary of U0. When alpha <= D0 the weight
/// reaches its pole inside U0 \ U1 and the infinite wall itself is the
/// barrier (interior_pole). Otherwise `value` is the measured
/// H(dU0) - h(dU0) and `eta_bound` the a-priori bound eta - h(dU0); a
/// negative value certifies the barrier.
struct BarrierReport {
    bool interior_pole;
    double value;
    double eta_bound;
    bool negative() const { return interior_pole || value < 0.0; }
};

BarrierReport barrier_sign(const ProfileMetric& m, const ShieldSpec& spec,
                           const MuWeight& weight);

}  // namespace masscheck

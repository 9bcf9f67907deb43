#pragma once

#include <memory>
#include <string>
#include <vector>

#include "masscheck/geometry.hpp"

namespace masscheck {

/// Smooth even bump used as the smoothing kernel. Normalized to unit mass,
/// nonnegative, supported in (-1, 1). The cumulative distribution is
/// precomputed on a dense grid.
class Mollifier {
public:
    /// The standard bump c * exp(-1/(1 - u^2)) on (-1, 1).
    static Mollifier standard_bump();

    /// Kernel from CSV rows (u, phi); header row skipped. Samples must cover
    /// [-1, 1]; the kernel is renormalized only if the mass is within 1e-8 of
    /// one, otherwise construction fails.
    static Mollifier from_csv(const std::string& path);

    double phi(double u) const;   // kernel value
    double dphi(double u) const;  // kernel derivative
    double cdf(double u) const;   // Int_{-1}^{u} phi

private:
    Mollifier() = default;
    void validate() const;

    // Uniform samples of phi, dphi and the cumulative on [-1, 1].
    std::vector<double> u_, phi_, dphi_, cdf_;
};

/// Outward mean curvatures of the matching hypersurface seen from the two
/// sides of a corner: `inner` from the region s < s0, `outer` from s > s0,
/// both with respect to the normal pointing toward increasing s.
struct MeanCurvatureGap {
    double inner;  // H_-
    double outer;  // H_+
    double jump() const { return inner - outer; }
};

/// Metric glued from two profiles across a hypersurface where the warping
/// function is continuous but its derivative may jump. The right profile is
/// translated in arclength so that its inner boundary coincides with the left
/// profile's outer boundary.
class CornerMetric {
public:
    CornerMetric(ProfileMetric left, ProfileMetric right,
                 double h_match_tol = 1e-9);

    int dim() const { return left_.dim(); }
    const ProfileMetric& left() const { return left_; }
    const ProfileMetric& right() const { return right_; }

    double corner_s() const { return s0_; }
    double corner_h() const { return left_.h(left_.size() - 1); }
    double s_min() const { return left_.s_min(); }
    double s_max() const { return s0_ + right_span(); }

    /// One-sided data in glued arclength coordinates; at s = s0 the side is
    /// chosen by `side` (-1 left, +1 right).
    void eval(double s, int side, double& h, double& hp, double& hpp) const;

    MeanCurvatureGap mean_curvature_gap() const;

    /// Largest admissible smoothing width.
    double max_delta() const;

    double right_span() const {
        return right_.s_max() - right_.s_min();
    }
    /// Maps glued arclength to the right profile's own coordinate.
    double to_right_coord(double s) const {
        return s - s0_ + right_.s_min();
    }

private:
    ProfileMetric left_, right_;
    double s0_;
};

/// Result of smoothing a corner at scale delta: the derivative of the warping
/// function is replaced inside U_delta = (s0 - delta, s0 + delta) by a C^2
/// interpolant built from a mollified profile, a smeared step, and a C^2
/// cutoff, plus an exact-volume compensation bump so that the metric is
/// untouched outside U_delta.
class SmoothedCorner {
public:
    SmoothedCorner(const CornerMetric& corner, double delta,
                   const Mollifier& kernel);

    double delta() const { return delta_; }
    double epsilon() const { return eps_; }
    int dim() const { return corner_.dim(); }
    double corner_s() const { return corner_.corner_s(); }
    const CornerMetric& corner() const { return corner_; }

    // Smoothed data as functions of glued arclength.
    double h(double s) const;
    double hp(double s) const;
    double hpp(double s) const;
    double scalar_curvature(double s) const;
    double ricci_max_abs(double s) const;

    /// Int_{U_delta} R_delta dmu.
    double spike_integral() const;
    /// Int_{U_delta} max(-R_delta, 0) dmu.
    double negative_part_l1() const;
    /// sup |h_delta - h| and sup |h_delta' - h'| over U_delta.
    double c0_distance() const;
    double c1_distance() const;

    /// Merged-grid metric: original samples (bitwise) outside U_delta, a
    /// graded fine grid with exact construction derivatives inside.
    ProfileMetric to_profile() const;

private:
    double p(double t) const;      // one-sided h' minus the step
    double dp(double t) const;     // one-sided h''
    double conv(double t) const;   // (p * phi_eps)(t)
    double dconv(double t) const;  // derivative of the mollification
    double blended(double t) const;       // A(t)
    double blended_deriv(double t) const; // A'(t)
    double bump(double t) const;          // compensation bump psi
    double dbump(double t) const;
    double original_hp(double t) const;
    std::vector<double> inner_grid() const;  // graded nodes on [-delta, delta]

    CornerMetric corner_;
    Mollifier kernel_;
    double delta_, eps_, jump_, kappa_;
    // Cumulative integral of hp_delta on the graded grid (for h()), plus the
    // slopes at the nodes for Hermite evaluation between them.
    std::vector<double> node_t_, node_h_, node_hp_;
};

}  // namespace masscheck

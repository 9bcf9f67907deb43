#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "masscheck/util.hpp"

namespace masscheck {

/// Classification of a profile boundary.
enum class EndFlag {
    AsymptoticallyFlat,
    CompleteOther,
    Boundary,
    TruncatedIncomplete,
};

std::string to_string(EndFlag f);

enum class End { Inner, Outer };

/// Numerical thresholds for the asymptotic-flatness sanity check applied to
/// ends flagged AsymptoticallyFlat: over the last decade of the grid,
/// |h/s - 1| and |h' - 1| must stay below the tolerances.
struct AsymptoticsCheck {
    double ratio_tol = 1e-3;
    double slope_tol = 1e-3;
    bool enabled = true;
};

/// Rotationally symmetric metric in arclength gauge,
///   g = ds^2 + h(s)^2 sigma   (sigma the unit round (n-1)-sphere metric).
///
/// Samples are stored with first and second derivatives of the warping
/// function h. Analytic presets carry exact derivatives; table metrics get
/// 4th-order finite-difference derivatives at construction.
class ProfileMetric {
public:
    /// Table metric: derivatives via finite differences.
    ProfileMetric(int n, std::vector<double> s, std::vector<double> h,
                  EndFlag inner, EndFlag outer,
                  const AsymptoticsCheck& check = {});

    /// Metric with caller-supplied (exact) derivatives.
    ProfileMetric(int n, std::vector<double> s, std::vector<double> h,
                  std::vector<double> hp, std::vector<double> hpp,
                  EndFlag inner, EndFlag outer, bool analytic,
                  const AsymptoticsCheck& check = {});

    int dim() const { return n_; }
    std::size_t size() const { return s_.size(); }
    bool analytic() const { return analytic_; }

    double s(std::size_t i) const { return s_.at(i); }
    double h(std::size_t i) const { return h_.at(i); }
    double hp(std::size_t i) const { return hp_.at(i); }
    double hpp(std::size_t i) const { return hpp_.at(i); }

    const std::vector<double>& grid() const { return s_; }
    const std::vector<double>& warp() const { return h_; }
    const std::vector<double>& warp_d1() const { return hp_; }
    const std::vector<double>& warp_d2() const { return hpp_; }

    EndFlag end(End e) const {
        return e == End::Inner ? ends_[0] : ends_[1];
    }

    double s_min() const { return s_.front(); }
    double s_max() const { return s_.back(); }

    /// Quintic Hermite interpolation of h (and derivatives) between samples.
    void eval(double s, double& h, double& hp, double& hpp) const;
    double eval_h(double s) const;

private:
    void validate(const AsymptoticsCheck& check) const;

    int n_;
    std::vector<double> s_, h_, hp_, hpp_;
    std::array<EndFlag, 2> ends_;
    bool analytic_;
};

// ---------------------------------------------------------------------------
// Presets

/// Euclidean profile h(s) = s on [s_min, s_max], s_min > 0.
ProfileMetric flat_profile(int n, double s_min, double s_max, std::size_t N,
                           EndFlag inner = EndFlag::Boundary,
                           EndFlag outer = EndFlag::Boundary);

/// Round cylinder h == c on [s_min, s_max].
ProfileMetric cylinder_profile(int n, double c, double s_min, double s_max,
                               std::size_t N,
                               EndFlag inner = EndFlag::CompleteOther,
                               EndFlag outer = EndFlag::Boundary);

/// Schwarzschild profile of mass m in arclength gauge: the warping function
/// satisfies h'(s) = sqrt(1 - 2 m h^{2-n}), parametrized by area radius
/// samples spaced geometrically on [r_min, r_max]. Arclength origin is
/// s(r_min) = r_min. Requires r_min >= horizon radius (2m)^{1/(n-2)} when
/// m > 0.
ProfileMetric schwarzschild_profile(int n, double m, double r_min,
                                    double r_max, std::size_t N,
                                    EndFlag inner = EndFlag::Boundary,
                                    EndFlag outer = EndFlag::AsymptoticallyFlat);

/// Table metric from two-column CSV (header row, then s,h).
ProfileMetric profile_from_csv(int n, const std::string& path, EndFlag inner,
                               EndFlag outer);

// ---------------------------------------------------------------------------
// Curvature and mass functionals

/// Scalar curvature at sample i:
///   R = -2(n-1) h''/h + (n-1)(n-2) (1 - h'^2)/h^2.
double scalar_curvature(const ProfileMetric& m, std::size_t i);

struct RicciEigenvalues {
    double radial;      // -(n-1) h''/h
    double tangential;  // -h''/h + (n-2)(1 - h'^2)/h^2
};

RicciEigenvalues ricci_curvature(const ProfileMetric& m, std::size_t i);

/// Largest |Ricci eigenvalue| at sample i.
double ricci_max_abs(const ProfileMetric& m, std::size_t i);

/// Mean curvature of the coordinate sphere at sample i,
///   H = orientation * (n-1) h'/h,
/// orientation +1 for the normal pointing toward increasing s.
double mean_curvature_sphere(const ProfileMetric& m, std::size_t i,
                             int orientation);

/// Misner-Sharp quasi-local mass m(s) = (h^{n-2}/2)(1 - h'^2).
double misner_sharp_mass(const ProfileMetric& m, std::size_t i);

struct AdmMass {
    double value;       // extrapolated Misner-Sharp limit (primary)
    double flux_value;  // extrapolated coordinate flux integral (cross-check)
    double relative_gap() const {
        const double scale = std::max({std::abs(value), std::abs(flux_value), 1e-12});
        return std::abs(value - flux_value) / scale;
    }
};

/// ADM mass of an asymptotically flat end, by Richardson extrapolation of the
/// Misner-Sharp mass plus an independent flux-integral evaluation in the
/// coordinate chart g_ij = delta_ij + (h'^{-2} - 1) x_i x_j / |x|^2, |x| = h.
/// Throws if the end is not flagged asymptotically flat or the extrapolation
/// fails to settle.
AdmMass adm_mass(const ProfileMetric& m, End end = End::Outer);

/// Arclength distance |s_b - s_a|; errors if out of grid range.
double distance(const ProfileMetric& m, double s_a, double s_b);

/// Integral of sampled f against the volume measure
/// d mu = omega_{n-1} h^{n-1} ds over [s_a, s_b] (composite trapezoid).
double integrate(const ProfileMetric& m, const std::vector<double>& f,
                 double s_a, double s_b);

/// Same, with f given as a callable of s.
double integrate(const ProfileMetric& m,
                 const std::function<double(double)>& f, double s_a,
                 double s_b);

}  // namespace masscheck

#pragma once

#include <cstddef>
#include <vector>

#include "masscheck/geometry.hpp"

namespace masscheck {

/// Exponents for the weighted potential norms. Admissibility requires
/// p > n and q > (n-2)/2.
struct WeightedNormConfig {
    double p = 4.0;
    double q = 1.0;
};

/// The three norms controlling a scalar-curvature potential V:
///  - negative_critical: || V^- ||_{L^{n/2}} with respect to the volume
///    measure of the profile metric;
///  - weighted_decay:    || V ||_{L^p_{-q-2}}, the decay-weighted norm over
///    the end, || |x|^{q+2} V ||_{L^p(dx / |x|^n)} with |x| = h;
///  - subcritical:       || V ||_{L^{2n/(n+2)}} with respect to the volume
///    measure.
struct PotentialNorms {
    double negative_critical;
    double weighted_decay;
    double subcritical;
};

PotentialNorms potential_norms(const ProfileMetric& m,
                               const std::vector<double>& V,
                               const WeightedNormConfig& cfg);

/// Potential from the negative part of scalar curvature: V = min(R, 0), so
/// that R - V >= 0 pointwise. With smoothing kappa > 0 the kink is replaced
/// by the C^infinity approximation -kappa log(1 + exp(-R/kappa)) <= 0.
std::vector<double> negative_curvature_potential(const ProfileMetric& m,
                                                 double smoothing = 0.0);

struct ConformalOptions {
    enum class OuterBC { Robin, Dirichlet };
    OuterBC outer = OuterBC::Robin;
    /// Robin coefficient q in u' + q (h'/h)(u - 1) = 0 at the outer boundary;
    /// negative means the default n-2 (exact for 1/h^{n-2} tails).
    double robin_coefficient = -1.0;
    double dirichlet_value = 1.0;
    /// Asymptotics thresholds applied when rebuilding the conformal metric.
    AsymptoticsCheck check = {};
};

/// Solution of the linear conformal equation
///   -a Laplacian(u) + V u = 0,   a = 4(n-1)/(n-2),
/// with zero-flux inner boundary and Robin or Dirichlet outer boundary,
/// discretized in self-adjoint form on the profile grid.
class ConformalSolution {
public:
    ConformalSolution(ProfileMetric base, std::vector<double> V,
                      std::vector<double> u, ConformalOptions options);

    const ProfileMetric& base() const { return base_; }
    const std::vector<double>& factor() const { return u_; }
    const std::vector<double>& potential() const { return V_; }

    /// Max-norm residual of the discrete equation, relative to its row scale.
    double residual() const;

    /// Scalar curvature of the conformal metric at sample i:
    ///   (R - V) u^{-4/(n-2)}.
    double conformal_scalar(std::size_t i) const;

    /// Conformal metric in arclength gauge: ds~ = u^{2/(n-2)} ds,
    /// h~ = u^{2/(n-2)} h, rebuilt as a table metric.
    ProfileMetric conformal_metric() const;

    /// Mass shift predicted by the flux expansion of u:
    ///   -(1 / (2(n-1) omega_{n-1})) Int V u dmu.
    double formula_mass_change() const;

private:
    ProfileMetric base_;
    std::vector<double> V_, u_;
    ConformalOptions options_;
};

ConformalSolution solve_conformal(const ProfileMetric& m,
                                  std::vector<double> V,
                                  const ConformalOptions& options = {});

/// Total conformal mass together with its two routes: the potential-integral
/// formula and a direct asymptotic evaluation on the conformal metric.
struct MassChange {
    double base;     // mass of the background end
    double formula;  // base + formula shift
    double direct;   // mass of the conformal end
    double relative_gap() const {
        const double scale =
            std::max({std::abs(formula), std::abs(direct), 1e-12});
        return std::abs(formula - direct) / scale;
    }
};

MassChange mass_change(const ConformalSolution& sol);

/// Quadratic-form diagnostics for the solution:
///   gradient_term  = Int a |u'|^2 dmu,
///   potential_term = Int V u^2 dmu,
///   holder_bound   = ||V^-||_{L^{n/2}} ||u||^2_{L^{2n/(n-2)}},
/// with the chain potential_term >= -holder_bound always valid.
struct EnergyReport {
    double gradient_term;
    double potential_term;
    double holder_bound;
    double total() const { return gradient_term + potential_term; }
};

EnergyReport energy_report(const ConformalSolution& sol);

}  // namespace masscheck

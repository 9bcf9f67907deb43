#pragma once

#include <cstddef>
#include <vector>

#include "masscheck/corner.hpp"
#include "masscheck/geometry.hpp"

namespace masscheck {

/// Arclength window on which an eigenvalue problem is posed.
struct EigenDomain {
    double s_a;
    double s_b;
};

struct EigenOptions {
    /// Coupling in front of the Laplacian; negative means the conformal
    /// default 4(n-1)/(n-2).
    double coupling = -1.0;
    /// 1-based index of the requested eigenvalue (1 = principal).
    int index = 1;
    double tol = 1e-12;
};

struct EigenResult {
    double value;                 // eigenvalue from Sturm bisection
    double rayleigh;              // discrete Rayleigh quotient of the vector
    double residual;              // |value - rayleigh| / max(1, |value|)
    std::vector<double> s;        // domain samples
    std::vector<double> vector;   // eigenvector, max-normalized
};

/// k-th Neumann eigenvalue of -a Laplacian + V on the window, discretized in
/// self-adjoint form (weight h^{n-1}) on the profile's own samples. Natural
/// (zero-flux) conditions at both window ends. Requires at least 8 samples in
/// the window.
EigenResult neumann_principal_eigenvalue(const ProfileMetric& m,
                                         const std::vector<double>& V,
                                         const EigenDomain& domain,
                                         const EigenOptions& options = {});

/// Principal eigenvalue of -a Laplacian + R_delta on a fixed window around a
/// corner, for each smoothing width in `deltas`.
struct EigenScanRow {
    double delta;
    double eigenvalue;
    double residual;
};

std::vector<EigenScanRow> smoothing_eigen_scan(const CornerMetric& corner,
                                               const EigenDomain& domain,
                                               const std::vector<double>& deltas,
                                               const Mollifier& kernel,
                                               const EigenOptions& options = {});

/// Discrete supersolution test: checks (-a Laplacian + V) u >= 0 at interior
/// samples of the window for a given positive u.
struct SupersolutionReport {
    bool is_supersolution;
    double min_defect;  // most negative value of the discrete operator on u
};

SupersolutionReport supersolution_check(const ProfileMetric& m,
                                        const std::vector<double>& V,
                                        const std::vector<double>& u,
                                        const EigenDomain& domain,
                                        double coupling = -1.0);

}  // namespace masscheck

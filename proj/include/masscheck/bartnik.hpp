#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "masscheck/geometry.hpp"

namespace masscheck {

/// Round-sphere boundary data (Sigma, gamma, eta): an (n-1)-sphere of area
/// radius rho with prescribed mean curvature eta, either constant or sampled
/// with quadrature weights. Weights must sum to the sphere area
/// omega_{n-1} rho^{n-1}.
class BartnikData {
public:
    BartnikData(int n, double rho, double eta_const);
    BartnikData(int n, double rho, std::vector<double> eta,
                std::vector<double> weights);

    /// Variable eta from CSV rows (polar angle, eta, weight); header row
    /// skipped. Weights are rescaled checked against the sphere area.
    static BartnikData from_csv(int n, double rho, const std::string& path);

    int dim() const { return n_; }
    double rho() const { return rho_; }
    bool constant_eta() const { return weights_.empty(); }
    double eta_const() const;
    double eta_min() const;
    double eta_integral() const;  // Int_Sigma eta dmu
    double area() const;

    /// Euclidean-embedding mean curvature of the round sphere.
    double embedded_mean_curvature() const { return (n_ - 1) / rho_; }

private:
    int n_;
    double rho_;
    std::vector<double> eta_, weights_;  // empty weights => constant eta_[0]
};

/// Brown-York mass m_BY = (1/((n-1) omega_{n-1})) Int_Sigma (H0 - eta).
double brown_york(const BartnikData& data);

/// Rotationally symmetric scalar-flat extension g+ = u^2 dr^2 + r^2 sigma,
/// u(r)^{-2} = 1 - 2 c r^{2-n}, which in arclength gauge is the
/// Schwarzschild profile of mass c started at area radius r0.
struct ShiTamExtension {
    double r0;
    double c;  // extension mass parameter
    ProfileMetric profile;
};

/// Builds the extension matching constant boundary mean curvature eta toward
/// the end: c = (r0^{n-2}/2)(1 - (eta r0/(n-1))^2). Requires eta >= 0; the
/// value eta = 0 yields the horizon limit c = r0^{n-2}/2.
ShiTamExtension shi_tam_extend(int n, double r0, double eta_const,
                               double r_out = 0.0, std::size_t N = 6000);

struct FillInBound {
    bool satisfied;  // min eta <= lambda
    double margin;   // lambda - min eta
};

/// Checks the fill-in mean-curvature bound min eta <= lambda for a
/// user-supplied constant lambda.
FillInBound verify_fill_in_bound(const BartnikData& data, double lambda);

}  // namespace masscheck

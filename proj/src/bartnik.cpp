#include "masscheck/bartnik.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace masscheck {

BartnikData::BartnikData(int n, double rho, double eta_const)
    : n_(n), rho_(rho), eta_{eta_const} {
    if (n < 3 || n > 7) throw Error("BartnikData: dimension must be in [3,7]");
    if (!(rho > 0.0)) throw Error("BartnikData: rho must be positive");
}

BartnikData::BartnikData(int n, double rho, std::vector<double> eta,
                         std::vector<double> weights)
    : n_(n), rho_(rho), eta_(std::move(eta)), weights_(std::move(weights)) {
    if (n < 3 || n > 7) throw Error("BartnikData: dimension must be in [3,7]");
    if (!(rho > 0.0)) throw Error("BartnikData: rho must be positive");
    if (eta_.empty() || eta_.size() != weights_.size())
        throw Error("BartnikData: eta/weight size mismatch");
    const double total =
        std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - area()) > 1e-8 * area())
        throw Error("BartnikData: quadrature weights do not sum to sphere area");
}

BartnikData BartnikData::from_csv(int n, double rho, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("BartnikData::from_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error("BartnikData::from_csv: empty file " + path);
    std::vector<double> eta, w;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
            !std::getline(row, c, ','))
            throw Error("BartnikData::from_csv: malformed row in " + path);
        eta.push_back(std::stod(b));
        w.push_back(std::stod(c));
    }
    return BartnikData(n, rho, std::move(eta), std::move(w));
}

double BartnikData::area() const {
    return unit_sphere_volume(n_) * std::pow(rho_, n_ - 1);
}

double BartnikData::eta_const() const {
    if (!constant_eta()) throw Error("BartnikData: eta is not constant");
    return eta_[0];
}

double BartnikData::eta_min() const {
    double m = eta_[0];
    for (double e : eta_) m = std::min(m, e);
    return m;
}

double BartnikData::eta_integral() const {
    if (constant_eta()) return eta_[0] * area();
    double sum = 0.0;
    for (std::size_t i = 0; i < eta_.size(); ++i) sum += eta_[i] * weights_[i];
    return sum;
}

double brown_york(const BartnikData& data) {
    const int n = data.dim();
    const double omega = unit_sphere_volume(n);
    const double h0_integral = data.embedded_mean_curvature() * data.area();
    return (h0_integral - data.eta_integral()) / ((n - 1) * omega);
}

ShiTamExtension shi_tam_extend(int n, double r0, double eta_const,
                               double r_out, std::size_t N) {
    if (!(r0 > 0.0)) throw Error("shi_tam_extend: r0 must be positive");
    if (eta_const < 0.0)
        throw Error("shi_tam_extend: boundary mean curvature must be >= 0");
    double slope = eta_const * r0 / (n - 1);  // = h'(r0)
    // Roundoff guard: eta at exactly the Euclidean value may overshoot
    // slope = 1 by a few ulp; clamp instead of rejecting.
    if (slope > 1.0 && slope < 1.0 + 1e-12) slope = 1.0;
    if (slope > 1.0)
        throw Error("shi_tam_extend: eta exceeds the Euclidean value (n-1)/r0");
    const double c = 0.5 * std::pow(r0, n - 2) * (1.0 - slope * slope);
    if (r_out <= 0.0) r_out = 4.0e5 * r0;
    ProfileMetric profile =
        schwarzschild_profile(n, c, r0, r_out, N, EndFlag::Boundary,
                              EndFlag::AsymptoticallyFlat);
    return ShiTamExtension{r0, c, std::move(profile)};
}

FillInBound verify_fill_in_bound(const BartnikData& data, double lambda) {
    const double margin = lambda - data.eta_min();
    return FillInBound{margin >= 0.0, margin};
}

}  // namespace masscheck

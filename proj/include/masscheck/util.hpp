#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace masscheck {

/// Error type for all domain-level failures (bad input, unsatisfied
/// preconditions, failed solves).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846;

/// Volume of the unit (n-1)-sphere, omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_volume(int n) {
    if (n < 2) throw Error("unit_sphere_volume: need n >= 2");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Finite-difference weights on arbitrary nodes (Fornberg's algorithm).
/// Returns weights w such that f^(m)(x0) ~= sum_i w[i] f(x[i]).
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m);

/// Solves a tridiagonal system in place (Thomas algorithm).
/// lower[i] multiplies u[i-1] in row i, upper[i] multiplies u[i+1].
/// Throws Error on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::vector<double> diag,
                                      std::vector<double> lower,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);

/// Adaptive Simpson quadrature of f over [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int max_depth = 40);

/// Fixed-order Gauss-Legendre quadrature (16 nodes) of f over [a, b].
double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b);

/// Composite trapezoid rule for samples f on nodes x.
double trapezoid(const std::vector<double>& x, const std::vector<double>& f);

/// Largest i with x[i] <= v (x sorted ascending); clamped to [0, n-2].
std::size_t bracket_index(const std::vector<double>& x, double v);

/// C^2 smoothstep: 0 at u<=0, 1 at u>=1, quintic in between.
inline double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

inline double smoothstep5_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

inline double smoothstep5_deriv2(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

}  // namespace masscheck

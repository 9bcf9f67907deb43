#include "masscheck/shield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace masscheck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_spec(const ProfileMetric& m, const ShieldSpec& spec) {
    const double tol = 1e-9 * std::max(1.0, m.s_max() - m.s_min());
    for (const Interval* u : {&spec.u0, &spec.u1, &spec.u2}) {
        if (!(u->b > u->a)) throw Error("shield: empty region interval");
        if (u->a < m.s_min() - tol || u->b > m.s_max() + tol)
            throw Error("shield: region extends outside the profile");
        // All three regions must be anchored at the outer end of the grid, so
        // that each has a single boundary sphere at its left endpoint.
        if (std::abs(u->b - m.s_max()) > tol)
            throw Error("shield: region must reach the outer end of the grid");
    }
    if (!(spec.u1.a - spec.u0.a > 0.0) || !(spec.u2.a - spec.u1.a > 0.0))
        throw Error("shield: regions are not properly nested");
    if (!(spec.kappa > 0.0)) throw Error("shield: kappa must be positive");
    if (!(spec.eta > 0.0)) throw Error("shield: eta must be positive");
}

double boundary_mean_curvature(const ProfileMetric& m, double s0) {
    double h, hp, hpp;
    m.eval(s0, h, hp, hpp);
    // Normal pointing into the region, i.e. toward increasing s.
    return (m.dim() - 1) * hp / h;
}

// C^1 ramp from value y0 at x = 0 to y1 at x = 1 whose slope profile is a
// symmetric trapezoid: linear rise on [0, r], plateau, linear fall on
// [1 - r, 1]. The plateau slope exceeds the mean slope by 1/(1 - r); with
// r = 2/27 that factor is 1.08.
constexpr double kRampShoulder = 2.0 / 27.0;

double trapezoid_ramp(double x, double y0, double y1, double* slope) {
    const double r = kRampShoulder;
    const double peak = (y1 - y0) / (1.0 - r);  // plateau slope
    double val, sl;
    if (x <= 0.0) {
        val = y0;
        sl = 0.0;
    } else if (x < r) {
        sl = peak * x / r;
        val = y0 + 0.5 * peak * x * x / r;
    } else if (x <= 1.0 - r) {
        sl = peak;
        val = y0 + 0.5 * peak * r + peak * (x - r);
    } else if (x < 1.0) {
        const double t = 1.0 - x;  // mirror of the rise
        sl = peak * t / r;
        val = y1 - 0.5 * peak * t * t / r;
    } else {
        val = y1;
        sl = 0.0;
    }
    if (slope) *slope = sl;
    return val;
}

}  // namespace

ShieldReport check_shield(const ProfileMetric& m, const ShieldSpec& spec) {
    validate_spec(m, spec);
    ShieldReport rep;
    rep.d0 = spec.u1.a - spec.u0.a;
    rep.d1 = spec.u2.a - spec.u1.a;
    const double tol = 1e-9 * std::max(1.0, m.s_max() - m.s_min());

    double min_r_u0 = kInf;     // over U0
    double min_r_annulus = kInf;  // over closure(U1) \ U2
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double s = m.s(i);
        if (s < spec.u0.a - tol || s > spec.u0.b + tol) continue;
        const double R = scalar_curvature(m, i);
        min_r_u0 = std::min(min_r_u0, R);
        if (s >= spec.u1.a - tol && s <= spec.u2.a + tol)
            min_r_annulus = std::min(min_r_annulus, R);
    }
    rep.nonnegative = {min_r_u0 >= -1e-10, min_r_u0};
    rep.curvature_floor = {min_r_annulus >= spec.kappa,
                           min_r_annulus - spec.kappa};

    const double H0 = boundary_mean_curvature(m, spec.u0.a);
    rep.boundary_bound = {H0 <= spec.eta, spec.eta - H0};

    const double need = 4.0 / (spec.kappa * rep.d1) - 2.0 / spec.eta;
    rep.width = {rep.d0 > need, rep.d0 - need};
    return rep;
}

MuWeight build_mu_weight(const ProfileMetric& m, const ShieldSpec& spec,
                         const BandSpec& band, double alpha) {
    validate_spec(m, spec);
    const double d1 = spec.u2.a - spec.u1.a;
    if (!(band.L > 0.0)) throw Error("shield: band scale must be positive");
    if (band.band.a < spec.u2.a - 1e-12 ||
        band.band.b > spec.u2.b + 1e-12 || !(band.band.b > band.band.a))
        throw Error("shield: band must sit inside the innermost region");

    MuWeight w;
    w.alpha = alpha < 0.0 ? 1.05 * 4.0 / (spec.kappa * d1) : alpha;
    if (!(w.alpha > 0.0)) throw Error("shield: alpha must be positive");

    const double rk = std::sqrt(spec.kappa);
    auto band_value = [&](double s, double* grad) {
        const double rho = band.rho_start + band.rho_slope * (s - band.band.a);
        const double arg = rk * rho / (2.0 * band.L);
        if (std::abs(arg) >= kPi / 2.0) {
            if (grad) *grad = 0.0;
            return arg > 0.0 ? -kInf : kInf;
        }
        const double sec2 = 1.0 / (std::cos(arg) * std::cos(arg));
        if (grad) *grad = -spec.kappa * band.rho_slope * sec2 / (2.0 * band.L);
        return -rk * std::tan(arg);
    };

    w.h_k = band_value(band.band.a, nullptr);
    if (!std::isfinite(w.h_k))
        throw Error("shield: band profile is infinite at the band start");
    w.case_id = std::abs(w.h_k) < 2.0 / w.alpha ? 1 : 2;
    // Case 1 walls off the inner boundary with the positive branch and
    // bridges down to h_k with a ramp; case 2 keeps the sign branch of h_k
    // and shifts the barrier profile to stay continuous at dU1.
    const double sign = w.case_id == 1 ? 1.0 : (w.h_k >= 0.0 ? 1.0 : -1.0);
    const double shift =
        w.case_id == 2 ? w.h_k - sign * 2.0 / w.alpha : 0.0;

    for (std::size_t i = 0; i < m.size(); ++i) {
        const double s = m.s(i);
        if (s <= spec.u0.a || s > spec.u0.b + 1e-12) continue;
        double val, grad;
        if (s >= band.band.a) {
            val = band_value(s, &grad);
        } else if (s >= spec.u2.a) {
            val = w.h_k;
            grad = 0.0;
        } else if (s >= spec.u1.a) {
            if (w.case_id == 2) {
                val = w.h_k;
                grad = 0.0;
            } else {
                const double x = (s - spec.u1.a) / d1;
                val = trapezoid_ramp(x, 2.0 / w.alpha, w.h_k, &grad);
                grad /= d1;
            }
        } else {
            // Distance to the boundary of U1, growing toward the boundary of
            // U0; past the pole rho = alpha the weight is an infinite wall.
            const double rho = spec.u1.a - s;
            if (rho >= w.alpha) {
                val = sign * kInf;
                grad = 0.0;
            } else {
                val = sign * 2.0 / (w.alpha - rho) + shift;
                grad = -sign * 2.0 / ((w.alpha - rho) * (w.alpha - rho));
            }
        }
        w.s.push_back(s);
        w.value.push_back(val);
        w.grad.push_back(std::isfinite(val) ? grad : 0.0);
        w.finite.push_back(std::isfinite(val));
    }
    if (w.s.size() < 8) throw Error("shield: region contains too few samples");
    return w;
}

WeightCheck verify_weight(const ProfileMetric& m, const MuWeight& weight) {
    WeightCheck out{kInf, weight.s.empty() ? 0.0 : weight.s.front(), true};
    std::size_t j = 0;
    for (std::size_t k = 0; k < weight.s.size(); ++k) {
        while (j + 1 < m.size() && m.s(j) < weight.s[k] - 1e-12) ++j;
        if (!weight.finite[k]) {
            out.finite_everywhere = false;
            continue;
        }
        const double margin = scalar_curvature(m, j) +
                              weight.value[k] * weight.value[k] -
                              2.0 * std::abs(weight.grad[k]);
        if (margin < out.min_margin) {
            out.min_margin = margin;
            out.argmin_s = weight.s[k];
        }
    }
    return out;
}

BarrierReport barrier_sign(const ProfileMetric& m, const ShieldSpec& spec,
                           const MuWeight& weight) {
    const double d0 = spec.u1.a - spec.u0.a;
    if (weight.alpha <= d0) return {true, -kInf, -kInf};
    const double sign =
        weight.case_id == 1 ? 1.0 : (weight.h_k >= 0.0 ? 1.0 : -1.0);
    const double shift =
        weight.case_id == 2 ? weight.h_k - sign * 2.0 / weight.alpha : 0.0;
    const double h0 = sign * 2.0 / (weight.alpha - d0) + shift;
    const double H0 = boundary_mean_curvature(m, spec.u0.a);
    return {false, H0 - h0, spec.eta - h0};
}

}  // namespace masscheck

#include "masscheck/conformal.hpp"

#include <cmath>

namespace masscheck {

namespace {

double coupling(int n) { return 4.0 * (n - 1) / static_cast<double>(n - 2); }

// Control-volume width at sample i.
double cell(const ProfileMetric& m, std::size_t i) {
    const std::size_t N = m.size();
    if (i == 0) return 0.5 * (m.s(1) - m.s(0));
    if (i + 1 == N) return 0.5 * (m.s(N - 1) - m.s(N - 2));
    return 0.5 * (m.s(i + 1) - m.s(i - 1));
}

// Face weight h^{n-1} between samples i and i+1.
double face_weight(const ProfileMetric& m, std::size_t i) {
    const double hm = 0.5 * (m.h(i) + m.h(i + 1));
    return std::pow(hm, m.dim() - 1);
}

struct DiscreteSystem {
    std::vector<double> diag, lower, upper, rhs;
};

DiscreteSystem assemble(const ProfileMetric& m, const std::vector<double>& V,
                        const ConformalOptions& options) {
    const std::size_t N = m.size();
    const int n = m.dim();
    const double a = coupling(n);
    DiscreteSystem sys;
    sys.diag.assign(N, 0.0);
    sys.lower.assign(N, 0.0);
    sys.upper.assign(N, 0.0);
    sys.rhs.assign(N, 0.0);
    // Row i: -a (F_{i+1/2} - F_{i-1/2}) + V_i h_i^{n-1} c_i u_i = 0 with
    // F_{i+1/2} = w_{i+1/2} (u_{i+1} - u_i) / ds. Zero inner flux is the
    // natural boundary condition of this form.
    for (std::size_t i = 0; i < N; ++i) {
        if (i + 1 < N) {
            const double w = a * face_weight(m, i) / (m.s(i + 1) - m.s(i));
            sys.diag[i] += w;
            sys.upper[i] -= w;
        }
        if (i > 0) {
            const double w = a * face_weight(m, i - 1) / (m.s(i) - m.s(i - 1));
            sys.diag[i] += w;
            sys.lower[i] -= w;
        }
        sys.diag[i] += V[i] * std::pow(m.h(i), n - 1) * cell(m, i);
    }
    const std::size_t L = N - 1;
    if (options.outer == ConformalOptions::OuterBC::Dirichlet) {
        sys.diag[L] = 1.0;
        sys.lower[L] = 0.0;
        sys.rhs[L] = options.dirichlet_value;
    } else {
        // Robin outer flux: h^{n-1} u' = -q h^{n-1} (h'/h)(u - 1).
        double q = options.robin_coefficient;
        if (q < 0.0) q = n - 2;
        const double w =
            a * q * std::pow(m.h(L), n - 1) * m.hp(L) / m.h(L);
        sys.diag[L] += w;
        sys.rhs[L] += w;
    }
    return sys;
}

}  // namespace

PotentialNorms potential_norms(const ProfileMetric& m,
                               const std::vector<double>& V,
                               const WeightedNormConfig& cfg) {
    const int n = m.dim();
    if (V.size() != m.size())
        throw Error("potential_norms: potential size mismatch");
    if (!(cfg.p > n))
        throw Error("potential_norms: decay exponent p must exceed the dimension");
    if (!(cfg.q > 0.5 * (n - 2)))
        throw Error("potential_norms: decay rate q must exceed (n-2)/2");
    const double omega = unit_sphere_volume(n);

    // Critical norm of the negative part, volume measure.
    std::vector<double> neg(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        neg[i] = std::pow(std::max(-V[i], 0.0), 0.5 * n);
    const double neg_int = integrate(m, neg, m.s_min(), m.s_max());

    // Subcritical norm, volume measure.
    const double sub_p = 2.0 * n / (n + 2.0);
    std::vector<double> sub(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        sub[i] = std::pow(std::abs(V[i]), sub_p);
    const double sub_int = integrate(m, sub, m.s_min(), m.s_max());

    // Decay-weighted norm over the end: the chart measure is
    // dx = omega h^{n-1} h' ds, and the weight is |x|^{q+2} with |x| = h.
    double wsum = 0.0;
    {
        std::vector<double> f(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double w = std::pow(m.h(i), cfg.q + 2.0) * std::abs(V[i]);
            f[i] = std::pow(w, cfg.p) * std::pow(m.h(i), -1.0 * n) *
                   std::pow(m.h(i), n - 1) * std::abs(m.hp(i)) * omega;
        }
        // Plain trapezoid in s (the measure factors are inside f).
        wsum = trapezoid(m.grid(), f);
    }

    return PotentialNorms{std::pow(neg_int, 2.0 / n), std::pow(wsum, 1.0 / cfg.p),
                          std::pow(sub_int, 1.0 / sub_p)};
}

std::vector<double> negative_curvature_potential(const ProfileMetric& m,
                                                 double smoothing) {
    std::vector<double> V(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double R = scalar_curvature(m, i);
        if (smoothing > 0.0) {
            // -kappa log(1 + exp(-R/kappa)), evaluated stably.
            const double x = -R / smoothing;
            const double soft =
                x > 30.0 ? x : std::log1p(std::exp(std::min(x, 30.0)));
            V[i] = -smoothing * soft;
        } else {
            V[i] = std::min(R, 0.0);
        }
    }
    return V;
}

ConformalSolution solve_conformal(const ProfileMetric& m,
                                  std::vector<double> V,
                                  const ConformalOptions& options) {
    if (V.size() != m.size())
        throw Error("solve_conformal: potential size mismatch");
    auto sys = assemble(m, V, options);
    std::vector<double> u;
    try {
        u = solve_tridiagonal(sys.diag, sys.lower, sys.upper, sys.rhs);
    } catch (const Error&) {
        throw Error("solve_conformal: discrete operator is singular at this resolution");
    }
    for (double v : u)
        if (!(v > 0.0))
            throw Error("solve_conformal: conformal factor is not positive");
    return ConformalSolution(m, std::move(V), std::move(u), options);
}

ConformalSolution::ConformalSolution(ProfileMetric base, std::vector<double> V,
                                     std::vector<double> u,
                                     ConformalOptions options)
    : base_(std::move(base)), V_(std::move(V)), u_(std::move(u)),
      options_(options) {}

double ConformalSolution::residual() const {
    auto sys = assemble(base_, V_, options_);
    const std::size_t N = u_.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double r = sys.diag[i] * u_[i] - sys.rhs[i];
        double scale = std::abs(sys.diag[i] * u_[i]);
        if (i > 0) {
            r += sys.lower[i] * u_[i - 1];
            scale = std::max(scale, std::abs(sys.lower[i] * u_[i - 1]));
        }
        if (i + 1 < N) {
            r += sys.upper[i] * u_[i + 1];
            scale = std::max(scale, std::abs(sys.upper[i] * u_[i + 1]));
        }
        worst = std::max(worst, std::abs(r) / std::max(scale, 1e-300));
    }
    return worst;
}

double ConformalSolution::conformal_scalar(std::size_t i) const {
    if (i >= base_.size())
        throw Error("conformal_scalar: index out of range");
    const int n = base_.dim();
    const double R = scalar_curvature(base_, i);
    return (R - V_[i]) * std::pow(u_[i], -4.0 / (n - 2));
}

ProfileMetric ConformalSolution::conformal_metric() const {
    const int n = base_.dim();
    const double expo = 2.0 / (n - 2);
    const std::size_t N = base_.size();
    std::vector<double> s_new(N), h_new(N), w(N);
    for (std::size_t i = 0; i < N; ++i) {
        w[i] = std::pow(u_[i], expo);
        h_new[i] = w[i] * base_.h(i);
    }
    s_new[0] = base_.s(0);
    for (std::size_t i = 1; i < N; ++i)
        s_new[i] = s_new[i - 1] +
                   0.5 * (w[i] + w[i - 1]) * (base_.s(i) - base_.s(i - 1));
    return ProfileMetric(n, std::move(s_new), std::move(h_new),
                         base_.end(End::Inner), base_.end(End::Outer),
                         options_.check);
}

double ConformalSolution::formula_mass_change() const {
    const int n = base_.dim();
    const double omega = unit_sphere_volume(n);
    std::vector<double> f(base_.size());
    for (std::size_t i = 0; i < base_.size(); ++i) f[i] = V_[i] * u_[i];
    const double integral = integrate(base_, f, base_.s_min(), base_.s_max());
    return -integral / (2.0 * (n - 1) * omega);
}

MassChange mass_change(const ConformalSolution& sol) {
    const double base = adm_mass(sol.base()).value;
    const double direct = adm_mass(sol.conformal_metric()).value;
    return MassChange{base, base + sol.formula_mass_change(), direct};
}

EnergyReport energy_report(const ConformalSolution& sol) {
    const ProfileMetric& m = sol.base();
    const int n = m.dim();
    const double a = coupling(n);
    const std::size_t N = m.size();
    const auto& u = sol.factor();
    const auto& V = sol.potential();

    // Gradient by centered differences on the grid.
    std::vector<double> grad2(N), pot(N), upow(N);
    for (std::size_t i = 0; i < N; ++i) {
        double du;
        if (i == 0)
            du = (u[1] - u[0]) / (m.s(1) - m.s(0));
        else if (i + 1 == N)
            du = (u[N - 1] - u[N - 2]) / (m.s(N - 1) - m.s(N - 2));
        else
            du = (u[i + 1] - u[i - 1]) / (m.s(i + 1) - m.s(i - 1));
        grad2[i] = a * du * du;
        pot[i] = V[i] * u[i] * u[i];
        upow[i] = std::pow(std::abs(u[i]), 2.0 * n / (n - 2.0));
    }
    EnergyReport rep;
    rep.gradient_term = integrate(m, grad2, m.s_min(), m.s_max());
    rep.potential_term = integrate(m, pot, m.s_min(), m.s_max());
    std::vector<double> neg(N);
    for (std::size_t i = 0; i < N; ++i)
        neg[i] = std::pow(std::max(-V[i], 0.0), 0.5 * n);
    const double neg_norm =
        std::pow(integrate(m, neg, m.s_min(), m.s_max()), 2.0 / n);
    const double u_norm = std::pow(
        integrate(m, upow, m.s_min(), m.s_max()), (n - 2.0) / n);
    rep.holder_bound = neg_norm * u_norm;
    return rep;
}

}  // namespace masscheck

#include <cmath>
#include <vector>

#include "doctest.h"
#include "masscheck/conformal.hpp"

using namespace masscheck;

namespace {

// Flat metric sampled on a geometric grid (so the far zone is resolved):
// the zero-mass exterior profile has h = s exactly.
ProfileMetric flat_geometric(double r_min, double r_max, std::size_t N) {
    return schwarzschild_profile(3, 0.0, r_min, r_max, N, EndFlag::Boundary,
                                 EndFlag::AsymptoticallyFlat);
}

}  // namespace

TEST_CASE("zero potential gives the trivial conformal factor") {
    auto m = flat_geometric(1.0, 1.0e5, 1200);
    std::vector<double> V(m.size(), 0.0);
    auto sol = solve_conformal(m, V);
    for (std::size_t i = 0; i < m.size(); i += 97)
        CHECK(sol.factor()[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.formula_mass_change() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sol.residual() < 1e-12);
}

TEST_CASE("nonpositive potential: factor stays above one and decays") {
    auto m = flat_geometric(1.0, 1.0e5, 2000);
    std::vector<double> V(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double s = m.s(i);
        V[i] = -0.2 * std::exp(-(s - 3.0) * (s - 3.0));
    }
    auto sol = solve_conformal(m, V);
    const auto& u = sol.factor();
    double peak = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(u[i] > 1.0 - 1e-10);
        peak = std::max(peak, u[i] - 1.0);
    }
    CHECK(peak > 1e-3);
    CHECK(u.back() - 1.0 < 1e-4);          // Robin end is nearly exact
    CHECK(sol.formula_mass_change() > 0.0);  // V <= 0 raises the mass
    CHECK(sol.residual() < 1e-12);
}

TEST_CASE("manufactured solution converges at second order") {
    // u*(s) = 1 + exp(-(s-1)^2) on the flat profile h = s over [1, 5]:
    // zero slope at the inner boundary, Dirichlet data at the outer one, and
    // the potential V = a (u*'' + 2 u*'/s) / u* makes u* an exact solution.
    auto sup_error = [](std::size_t N) {
        auto m = flat_profile(3, 1.0, 5.0, N);
        const double a = 8.0;  // 4(n-1)/(n-2) at n = 3
        std::vector<double> V(m.size());
        auto ustar = [](double s) {
            return 1.0 + std::exp(-(s - 1.0) * (s - 1.0));
        };
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double s = m.s(i);
            const double e = std::exp(-(s - 1.0) * (s - 1.0));
            const double du = -2.0 * (s - 1.0) * e;
            const double ddu = (4.0 * (s - 1.0) * (s - 1.0) - 2.0) * e;
            V[i] = a * (ddu + 2.0 * du / s) / ustar(s);
        }
        ConformalOptions opt;
        opt.outer = ConformalOptions::OuterBC::Dirichlet;
        opt.dirichlet_value = ustar(5.0);
        auto sol = solve_conformal(m, V, opt);
        double err = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
            err = std::max(err, std::abs(sol.factor()[i] - ustar(m.s(i))));
        return err;
    };
    const double e1 = sup_error(201), e2 = sup_error(401);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 > 3.5);  // second-order convergence
}

TEST_CASE("weighted potential norms against closed forms") {
    auto m = flat_profile(3, 0.5, 2.5, 4001);
    std::vector<double> V(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.h(i) >= 1.0 && m.h(i) <= 2.0) V[i] = -1.0;
    WeightedNormConfig cfg{4.0, 1.0};
    auto norms = potential_norms(m, V, cfg);
    const double vol = 4.0 * kPi * 7.0 / 3.0;  // annulus 1 <= |x| <= 2
    CHECK(norms.negative_critical ==
          doctest::Approx(std::pow(vol, 2.0 / 3.0)).epsilon(1e-3));
    CHECK(norms.subcritical ==
          doctest::Approx(std::pow(vol, 5.0 / 6.0)).epsilon(1e-3));
    const double closed =
        std::pow(4.0 * kPi * (std::pow(2.0, 12) - 1.0) / 12.0, 0.25);
    CHECK(norms.weighted_decay == doctest::Approx(closed).epsilon(1e-3));
}

TEST_CASE("norm exponent validation") {
    auto m = flat_profile(3, 1.0, 2.0, 64);
    std::vector<double> V(m.size(), -1.0);
    CHECK_THROWS_AS(potential_norms(m, V, WeightedNormConfig{3.0, 1.0}), Error);
    CHECK_THROWS_AS(potential_norms(m, V, WeightedNormConfig{4.0, 0.5}), Error);
}

TEST_CASE("negative-part potential") {
    // The round cylinder has positive scalar curvature: V vanishes.
    auto cyl = cylinder_profile(3, 1.0, 0.0, 4.0, 64);
    for (double v : negative_curvature_potential(cyl)) CHECK(v == 0.0);

    // A metric with regions of negative curvature keeps them with sign.
    const std::size_t N = 1201;
    std::vector<double> s(N), h(N);
    for (std::size_t i = 0; i < N; ++i) {
        s[i] = 1.0 + 4.0 * double(i) / double(N - 1);
        h[i] = s[i] + 0.3 * std::sin(2.0 * s[i]);
    }
    ProfileMetric wavy(3, s, h, EndFlag::Boundary, EndFlag::Boundary);
    auto V = negative_curvature_potential(wavy);
    bool has_negative = false;
    for (std::size_t i = 0; i < N; ++i) {
        CHECK(V[i] <= 0.0);
        const double R = scalar_curvature(wavy, i);
        CHECK(V[i] == doctest::Approx(std::min(R, 0.0)).epsilon(1e-12));
        if (V[i] < -0.1) has_negative = true;
    }
    CHECK(has_negative);

    // The smoothed variant stays nonpositive and within kappa of the kink.
    const double kappa = 0.01;
    auto Vs = negative_curvature_potential(wavy, kappa);
    for (std::size_t i = 0; i < N; ++i) {
        CHECK(Vs[i] <= 0.0);
        CHECK(std::abs(Vs[i] - V[i]) <= kappa);
    }
}

TEST_CASE("mass change: formula and asymptotic routes agree") {
    auto m = schwarzschild_profile(3, 1.0, 3.0, 1.0e6, 4000);
    std::vector<double> V(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double s = m.s(i);
        V[i] = -0.05 * std::exp(-(s - 5.0) * (s - 5.0));
    }
    auto sol = solve_conformal(m, V);
    auto mc = mass_change(sol);
    CHECK(mc.base == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mc.formula > mc.base);  // nonpositive potential raises the mass
    CHECK(mc.relative_gap() < 1e-4);
}

TEST_CASE("conformal scalar curvature with the negative-part potential") {
    // Wavy table metric with negative regions; after the conformal change
    // driven by V = min(R, 0), scalar curvature is nonnegative everywhere.
    const std::size_t N = 1201;
    std::vector<double> s(N), h(N);
    for (std::size_t i = 0; i < N; ++i) {
        s[i] = 1.0 + 4.0 * double(i) / double(N - 1);
        h[i] = s[i] + 0.3 * std::sin(2.0 * s[i]);
    }
    ProfileMetric wavy(3, s, h, EndFlag::Boundary, EndFlag::Boundary);
    auto V = negative_curvature_potential(wavy);
    auto sol = solve_conformal(wavy, V);
    for (std::size_t i = 0; i < N; i += 13)
        CHECK(sol.conformal_scalar(i) >= -1e-12);
}

TEST_CASE("energy chain: potential term dominated by the critical norm") {
    auto m = flat_geometric(1.0, 1.0e4, 1500);
    std::vector<double> V(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double s = m.s(i);
        V[i] = -0.3 * std::exp(-(s - 2.0) * (s - 2.0));
    }
    auto sol = solve_conformal(m, V);
    auto rep = energy_report(sol);
    CHECK(rep.gradient_term >= 0.0);
    CHECK(rep.potential_term < 0.0);
    CHECK(rep.potential_term >= -rep.holder_bound * (1.0 + 1e-8));
}

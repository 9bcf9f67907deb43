#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "curvature_oracle.hpp"
#include "masscheck/geometry.hpp"

using namespace masscheck;

namespace {

ProfileMetric wavy_table_metric(int n = 3) {
    // h(s) = s + 0.3 sin(s): positive, increasing, curvature nontrivial.
    const std::size_t N = 2001;
    std::vector<double> s(N), h(N);
    for (std::size_t i = 0; i < N; ++i) {
        s[i] = 1.0 + 4.0 * double(i) / double(N - 1);
        h[i] = s[i] + 0.3 * std::sin(s[i]);
    }
    return ProfileMetric(n, std::move(s), std::move(h), EndFlag::Boundary,
                         EndFlag::Boundary);
}

}  // namespace

TEST_CASE("unit sphere volumes") {
    CHECK(unit_sphere_volume(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(unit_sphere_volume(4) ==
          doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("flat profile is scalar-flat with Euclidean sphere data") {
    auto m = flat_profile(3, 1.0, 5.0, 64);
    for (std::size_t i : {std::size_t(0), m.size() / 2, m.size() - 1}) {
        CHECK(scalar_curvature(m, i) == doctest::Approx(0.0).epsilon(1e-12));
        auto ric = ricci_curvature(m, i);
        CHECK(std::abs(ric.radial) < 1e-12);
        CHECK(std::abs(ric.tangential) < 1e-12);
        CHECK(mean_curvature_sphere(m, i, +1) ==
              doctest::Approx(2.0 / m.h(i)).epsilon(1e-13));
        CHECK(mean_curvature_sphere(m, i, -1) ==
              doctest::Approx(-2.0 / m.h(i)).epsilon(1e-13));
        CHECK(std::abs(misner_sharp_mass(m, i)) < 1e-14);
    }
}

TEST_CASE("round cylinder curvature") {
    const double c = 1.7;
    auto m = cylinder_profile(3, c, 0.0, 4.0, 33);
    for (std::size_t i = 0; i < m.size(); i += 8) {
        CHECK(scalar_curvature(m, i) ==
              doctest::Approx(2.0 / (c * c)).epsilon(1e-13));
        auto ric = ricci_curvature(m, i);
        CHECK(std::abs(ric.radial) < 1e-14);
        CHECK(ric.tangential == doctest::Approx(1.0 / (c * c)).epsilon(1e-13));
        // Misner-Sharp mass of a cylinder slice: (c/2)(1 - 0) = c/2.
        CHECK(misner_sharp_mass(m, i) == doctest::Approx(0.5 * c).epsilon(1e-14));
    }
}

TEST_CASE("Schwarzschild preset: scalar-flat, exact quasi-local mass") {
    for (int n : {3, 4, 5}) {
        auto m = schwarzschild_profile(n, 1.0, 2.0, 50.0, 400,
                                       EndFlag::Boundary, EndFlag::Boundary);
        for (std::size_t i = 0; i < m.size(); i += 37) {
            CHECK(std::abs(scalar_curvature(m, i)) < 1e-10);
            CHECK(misner_sharp_mass(m, i) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("Schwarzschild Ricci eigenvalues at the horizon sphere") {
    // n = 3, m = 1, inner sample at area radius 2 (h' = 0, h'' = 1/4):
    // radial eigenvalue -2 h''/h = -1/4, tangential -h''/h + 1/h^2 = 1/8.
    auto m = schwarzschild_profile(3, 1.0, 2.0, 100.0, 600,
                                   EndFlag::Boundary, EndFlag::Boundary);
    auto ric = ricci_curvature(m, 0);
    CHECK(ric.radial == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(ric.tangential == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(ricci_max_abs(m, 0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("trace identity lambda_rad + (n-1) lambda_tan = R") {
    auto m = wavy_table_metric();
    for (std::size_t i = 0; i < m.size(); i += 113) {
        auto ric = ricci_curvature(m, i);
        CHECK(ric.radial + 2.0 * ric.tangential ==
              doctest::Approx(scalar_curvature(m, i)).epsilon(1e-10));
    }
}

TEST_CASE("scalar curvature matches Christoffel finite-difference oracle") {
    auto m = wavy_table_metric();
    testing::CurvatureOracle3D oracle(
        [](double s) { return s + 0.3 * std::sin(s); });
    for (double s : {1.5, 2.3, 3.1, 4.4}) {
        // Evaluate the library value at the nearest grid sample.
        std::size_t i = bracket_index(m.grid(), s);
        if (std::abs(m.s(i + 1) - s) < std::abs(m.s(i) - s)) ++i;
        CHECK(scalar_curvature(m, i) ==
              doctest::Approx(oracle.scalar(m.s(i))).epsilon(2e-5));
    }
}

TEST_CASE("quasi-local mass derivative identity m' = h^{n-1} h' R / (2(n-1))") {
    auto m = wavy_table_metric();
    const std::size_t i = 700;
    const double dm = (misner_sharp_mass(m, i + 1) -
                       misner_sharp_mass(m, i - 1)) /
                      (m.s(i + 1) - m.s(i - 1));
    const double pred = std::pow(m.h(i), 2) * m.hp(i) *
                        scalar_curvature(m, i) / 4.0;
    CHECK(dm == doctest::Approx(pred).epsilon(1e-5));
}

TEST_CASE("ADM mass: dual-route agreement on Schwarzschild") {
    // Outer radius per dimension: far enough for the asymptotics check while
    // keeping the 1 - h'^2 cancellation below the tolerance.
    for (auto [n, r_max] : {std::pair{3, 1.0e6}, std::pair{4, 1.0e4}}) {
        auto m = schwarzschild_profile(n, 1.0, 3.0, r_max, 4000);
        auto adm = adm_mass(m);
        CHECK(adm.value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(adm.flux_value == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(adm.relative_gap() < 1e-3);
    }
}

TEST_CASE("ADM mass vanishes on the flat profile") {
    auto m = flat_profile(3, 1.0, 1.0e6, 3000, EndFlag::Boundary,
                          EndFlag::AsymptoticallyFlat);
    auto adm = adm_mass(m);
    CHECK(std::abs(adm.value) < 1e-10);
    CHECK(std::abs(adm.flux_value) < 1e-10);
}

TEST_CASE("ADM mass requires an asymptotically flat end") {
    auto m = flat_profile(3, 1.0, 5.0, 64);
    CHECK_THROWS_AS(adm_mass(m), Error);
}

TEST_CASE("volume integration against closed forms") {
    auto m = flat_profile(3, 1.0, 2.0, 2001);
    // Volume of the Euclidean annulus 1 <= |x| <= 2.
    const double vol = integrate(m, [](double) { return 1.0; }, 1.0, 2.0);
    CHECK(vol == doctest::Approx(4.0 * kPi * 7.0 / 3.0).epsilon(1e-7));
    // Partial-cell handling: sub-interval not aligned with the grid.
    const double part = integrate(m, [](double) { return 1.0; }, 1.25, 1.75);
    const double exact = 4.0 * kPi * (std::pow(1.75, 3) - std::pow(1.25, 3)) / 3.0;
    CHECK(part == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("integration error shrinks under grid refinement") {
    auto err = [](std::size_t N) {
        auto m = flat_profile(3, 1.0, 2.0, N);
        const double v = integrate(
            m, [](double s) { return std::sin(s); }, 1.0, 2.0);
        const double exact = 4.0 * kPi *
            masscheck::integrate_adaptive(
                [](double s) { return s * s * std::sin(s); }, 1.0, 2.0);
        return std::abs(v - exact);
    };
    CHECK(err(101) / err(201) > 3.5);  // ~4 for a second-order rule
}

TEST_CASE("Hermite evaluation reproduces the analytic profile off-grid") {
    auto m = schwarzschild_profile(3, 1.0, 2.5, 20.0, 200,
                                   EndFlag::Boundary, EndFlag::Boundary);
    for (double t = 0.1; t < 0.95; t += 0.17) {
        const double s = m.s(31) + t * (m.s(32) - m.s(31));
        double h, hp, hpp;
        m.eval(s, h, hp, hpp);
        const double hp_exact = std::sqrt(1.0 - 2.0 / h);
        CHECK(hp == doctest::Approx(hp_exact).epsilon(1e-9));
        CHECK(hpp == doctest::Approx(1.0 / (h * h)).epsilon(1e-6));
    }
}

TEST_CASE("distance along the profile") {
    auto m = flat_profile(3, 1.0, 9.0, 100);
    CHECK(distance(m, 2.0, 7.5) == doctest::Approx(5.5));
    CHECK_THROWS_AS(distance(m, 0.5, 2.0), Error);
}

TEST_CASE("validation rejects malformed tables") {
    std::vector<double> s{0.0, 1.0, 0.5, 2.0};
    std::vector<double> h{1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(ProfileMetric(3, s, h, EndFlag::Boundary, EndFlag::Boundary),
                    Error);
    CHECK_THROWS_AS(flat_profile(3, -2.0, 5.0, 64), Error);
    CHECK_THROWS_AS(cylinder_profile(3, -1.0, 0.0, 1.0, 64), Error);
    // A cylinder end is not asymptotically flat.
    CHECK_THROWS_AS(cylinder_profile(3, 1.0, 0.0, 1.0e4, 2000,
                                     EndFlag::Boundary,
                                     EndFlag::AsymptoticallyFlat),
                    Error);
    CHECK_THROWS_AS(schwarzschild_profile(3, 1.0, 1.0, 50.0, 200), Error);
}

TEST_CASE("CSV round trip") {
    auto m = schwarzschild_profile(3, 0.5, 2.0, 40.0, 300,
                                   EndFlag::Boundary, EndFlag::Boundary);
    const std::string path = "geometry_roundtrip.csv";
    {
        std::ofstream out(path);
        out << "s,h\n";
        out.precision(17);
        for (std::size_t i = 0; i < m.size(); ++i)
            out << m.s(i) << "," << m.h(i) << "\n";
    }
    auto back = profile_from_csv(3, path, EndFlag::Boundary, EndFlag::Boundary);
    REQUIRE(back.size() == m.size());
    for (std::size_t i = 0; i < m.size(); i += 50) {
        CHECK(back.h(i) == doctest::Approx(m.h(i)).epsilon(1e-14));
        CHECK(back.hp(i) == doctest::Approx(m.hp(i)).epsilon(1e-7));
    }
    std::remove(path.c_str());
}

#pragma once

// Test-only scalar curvature oracle: assembles Christoffel symbols and the
// Ricci tensor of the 3-metric g = ds^2 + h(s)^2 (dtheta^2 + sin^2 theta
// dphi^2) purely by finite differences of the metric components, with no use
// of the warped-product closed forms under test.

#include <array>
#include <cmath>
#include <functional>

namespace masscheck::testing {

using Metric3 = std::array<std::array<double, 3>, 3>;

class CurvatureOracle3D {
public:
    explicit CurvatureOracle3D(std::function<double(double)> h,
                               double fd_step = 2e-3)
        : h_(std::move(h)), step_(fd_step) {}

    double scalar(double s, double theta = 1.0) const {
        const std::array<double, 3> x{s, theta, 0.0};
        Metric3 ginv = inverse(metric(x));
        double R = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) R += ginv[i][j] * ricci(x, i, j);
        return R;
    }

private:
    Metric3 metric(const std::array<double, 3>& x) const {
        const double h = h_(x[0]);
        const double st = std::sin(x[1]);
        Metric3 g{};
        g[0][0] = 1.0;
        g[1][1] = h * h;
        g[2][2] = h * h * st * st;
        return g;
    }

    static Metric3 inverse(const Metric3& g) {
        Metric3 inv{};
        for (int i = 0; i < 3; ++i) inv[i][i] = 1.0 / g[i][i];
        return inv;
    }

    double dmetric(const std::array<double, 3>& x, int k, int i, int j) const {
        auto xp = x, xm = x;
        xp[k] += step_;
        xm[k] -= step_;
        return (metric(xp)[i][j] - metric(xm)[i][j]) / (2.0 * step_);
    }

    double christoffel(const std::array<double, 3>& x, int k, int i,
                       int j) const {
        const Metric3 ginv = inverse(metric(x));
        double sum = 0.0;
        for (int l = 0; l < 3; ++l)
            sum += ginv[k][l] *
                   (dmetric(x, i, j, l) + dmetric(x, j, i, l) -
                    dmetric(x, l, i, j));
        return 0.5 * sum;
    }

    double dchristoffel(const std::array<double, 3>& x, int d, int k, int i,
                        int j) const {
        auto xp = x, xm = x;
        xp[d] += step_;
        xm[d] -= step_;
        return (christoffel(xp, k, i, j) - christoffel(xm, k, i, j)) /
               (2.0 * step_);
    }

    double ricci(const std::array<double, 3>& x, int i, int j) const {
        double R = 0.0;
        for (int k = 0; k < 3; ++k)
            R += dchristoffel(x, k, k, i, j) - dchristoffel(x, j, k, i, k);
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                R += christoffel(x, k, k, l) * christoffel(x, l, i, j) -
                     christoffel(x, k, j, l) * christoffel(x, l, i, k);
        return R;
    }

    std::function<double(double)> h_;
    double step_;
};

}  // namespace masscheck::testing

#include "masscheck/util.hpp"

#include <array>

namespace masscheck {

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
    // B. Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988).
    const int n = static_cast<int>(x.size());
    if (n == 0 || m < 0 || m >= n)
        throw Error("fd_weights: bad stencil request");
    std::vector<std::vector<double>> c(
        static_cast<std::size_t>(n),
        std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<std::size_t>(i)] -
                              x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 *
                        (k * c[static_cast<std::size_t>(i - 1)]
                              [static_cast<std::size_t>(k - 1)] -
                         c5 * c[static_cast<std::size_t>(i - 1)]
                               [static_cast<std::size_t>(k)]) /
                        c2;
                c[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)]
                          [static_cast<std::size_t>(k - 1)]) /
                    c3;
            c[static_cast<std::size_t>(j)][0] =
                c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] =
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
    return w;
}

std::vector<double> solve_tridiagonal(std::vector<double> diag,
                                      std::vector<double> lower,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw Error("solve_tridiagonal: inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) < 1e-300)
            throw Error("solve_tridiagonal: vanishing pivot");
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) < 1e-300)
        throw Error("solve_tridiagonal: vanishing pivot");
    std::vector<double> u(n);
    u[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
    return u;
}

namespace {

double simpson(const std::function<double(double)>&, double a, double fa,
               double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double fm, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b) {
    // 16-point Gauss-Legendre nodes/weights on [-1, 1].
    static const std::array<double, 8> xs = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
        0.9445750230732326, 0.9894009349916499};
    static const std::array<double, 8> ws = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
        0.0622535239386479, 0.0271524594117541};
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        sum += ws[i] * (f(c - hw * xs[i]) + f(c + hw * xs[i]));
    return hw * sum;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
    if (x.size() != f.size() || x.size() < 2)
        throw Error("trapezoid: need matching samples, at least 2");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        sum += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
    return sum;
}

std::size_t bracket_index(const std::vector<double>& x, double v) {
    if (x.size() < 2) throw Error("bracket_index: need at least 2 nodes");
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin() - 1);
    return std::min(i, x.size() - 2);
}

}  // namespace masscheck

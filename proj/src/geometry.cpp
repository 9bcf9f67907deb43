#include "masscheck/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace masscheck {

std::string to_string(EndFlag f) {
    switch (f) {
        case EndFlag::AsymptoticallyFlat: return "asymptotically_flat";
        case EndFlag::CompleteOther: return "complete_other";
        case EndFlag::Boundary: return "boundary";
        case EndFlag::TruncatedIncomplete: return "truncated_incomplete";
    }
    return "?";
}

namespace {

// 5-point finite-difference derivatives on an arbitrary grid.
void table_derivatives(const std::vector<double>& s,
                       const std::vector<double>& h, std::vector<double>& hp,
                       std::vector<double>& hpp) {
    const std::size_t N = s.size();
    hp.resize(N);
    hpp.resize(N);
    const std::size_t w = 5;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t lo = (i >= 2) ? i - 2 : 0;
        if (lo + w > N) lo = N - w;
        std::vector<double> nodes(s.begin() + static_cast<long>(lo),
                                  s.begin() + static_cast<long>(lo + w));
        const auto w1 = fd_weights(s[i], nodes, 1);
        const auto w2 = fd_weights(s[i], nodes, 2);
        double d1 = 0.0, d2 = 0.0;
        for (std::size_t k = 0; k < w; ++k) {
            d1 += w1[k] * h[lo + k];
            d2 += w2[k] * h[lo + k];
        }
        hp[i] = d1;
        hpp[i] = d2;
    }
}

}  // namespace

ProfileMetric::ProfileMetric(int n, std::vector<double> s,
                             std::vector<double> h, EndFlag inner,
                             EndFlag outer, const AsymptoticsCheck& check)
    : n_(n), s_(std::move(s)), h_(std::move(h)), ends_{inner, outer},
      analytic_(false) {
    if (s_.size() != h_.size()) throw Error("ProfileMetric: size mismatch");
    if (s_.size() >= 5) table_derivatives(s_, h_, hp_, hpp_);
    else throw Error("ProfileMetric: need at least 16 samples");
    validate(check);
}

ProfileMetric::ProfileMetric(int n, std::vector<double> s,
                             std::vector<double> h, std::vector<double> hp,
                             std::vector<double> hpp, EndFlag inner,
                             EndFlag outer, bool analytic,
                             const AsymptoticsCheck& check)
    : n_(n), s_(std::move(s)), h_(std::move(h)), hp_(std::move(hp)),
      hpp_(std::move(hpp)), ends_{inner, outer}, analytic_(analytic) {
    if (s_.size() != h_.size() || s_.size() != hp_.size() ||
        s_.size() != hpp_.size())
        throw Error("ProfileMetric: size mismatch");
    validate(check);
}

void ProfileMetric::validate(const AsymptoticsCheck& check) const {
    if (n_ < 3 || n_ > 7) throw Error("ProfileMetric: dimension must be in [3,7]");
    if (s_.size() < 16) throw Error("ProfileMetric: need at least 16 samples");
    for (std::size_t i = 0; i < s_.size(); ++i) {
        if (!(h_[i] > 0.0)) throw Error("ProfileMetric: h must be positive");
        if (i > 0 && !(s_[i] > s_[i - 1]))
            throw Error("ProfileMetric: grid must be strictly increasing");
    }
    if (!check.enabled) return;
    for (int e = 0; e < 2; ++e) {
        if (ends_[static_cast<std::size_t>(e)] != EndFlag::AsymptoticallyFlat)
            continue;
        // Walk the last decade of the grid toward the flagged end and test
        // h/s -> 1 and h' -> 1. The inner end uses |s| measured from the
        // opposite boundary, so only outer AF ends are supported.
        if (e == 0)
            throw Error("ProfileMetric: asymptotically flat inner end not supported");
        const double s_top = s_.back();
        const double s_cut = s_top / 10.0;
        bool any = false;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (s_[i] < s_cut) continue;
            any = true;
            if (std::abs(h_[i] / s_[i] - 1.0) > check.ratio_tol)
                throw Error("ProfileMetric: AF end fails h/s -> 1 check");
            if (std::abs(hp_[i] - 1.0) > check.slope_tol)
                throw Error("ProfileMetric: AF end fails h' -> 1 check");
        }
        if (!any) throw Error("ProfileMetric: AF end check found no samples");
    }
}

void ProfileMetric::eval(double s, double& h, double& hp, double& hpp) const {
    if (s < s_.front() - 1e-12 || s > s_.back() + 1e-12)
        throw Error("ProfileMetric::eval: s out of range");
    const std::size_t i = bracket_index(s_, s);
    const double a = s_[i], b = s_[i + 1], d = b - a;
    const double t = (s - a) / d;
    // Quintic Hermite basis on [0, 1].
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double H1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double H3 = 0.5 * t3 - t4 + 0.5 * t5;
    const double H4 = -4 * t3 + 7 * t4 - 3 * t5;
    const double H5 = 10 * t3 - 15 * t4 + 6 * t5;
    const double dH0 = (-30 * t2 + 60 * t3 - 30 * t4) / d;
    const double dH1 = (1 - 18 * t2 + 32 * t3 - 15 * t4) / d;
    const double dH2 = (t - 4.5 * t2 + 6 * t3 - 2.5 * t4) / d;
    const double dH3 = (1.5 * t2 - 4 * t3 + 2.5 * t4) / d;
    const double dH4 = (-12 * t2 + 28 * t3 - 15 * t4) / d;
    const double dH5 = (30 * t2 - 60 * t3 + 30 * t4) / d;
    const double d2H0 = (-60 * t + 180 * t2 - 120 * t3) / (d * d);
    const double d2H1 = (-36 * t + 96 * t2 - 60 * t3) / (d * d);
    const double d2H2 = (1 - 9 * t + 18 * t2 - 10 * t3) / (d * d);
    const double d2H3 = (3 * t - 12 * t2 + 10 * t3) / (d * d);
    const double d2H4 = (-24 * t + 84 * t2 - 60 * t3) / (d * d);
    const double d2H5 = (60 * t - 180 * t2 + 120 * t3) / (d * d);
    const double ya = h_[i], yb = h_[i + 1];
    const double pa = hp_[i] * d, pb = hp_[i + 1] * d;
    const double qa = hpp_[i] * d * d, qb = hpp_[i + 1] * d * d;
    h = H0 * ya + H1 * pa + H2 * qa + H3 * qb + H4 * pb + H5 * yb;
    hp = dH0 * ya + dH1 * pa + dH2 * qa + dH3 * qb + dH4 * pb + dH5 * yb;
    hpp = d2H0 * ya + d2H1 * pa + d2H2 * qa + d2H3 * qb + d2H4 * pb + d2H5 * yb;
}

double ProfileMetric::eval_h(double s) const {
    double h, hp, hpp;
    eval(s, h, hp, hpp);
    return h;
}

// ---------------------------------------------------------------------------
// Presets

ProfileMetric flat_profile(int n, double s_min, double s_max, std::size_t N,
                           EndFlag inner, EndFlag outer) {
    if (!(s_min > 0.0) || !(s_max > s_min))
        throw Error("flat_profile: need 0 < s_min < s_max");
    std::vector<double> s(N), h(N), hp(N, 1.0), hpp(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        s[i] = s_min + (s_max - s_min) * static_cast<double>(i) /
                           static_cast<double>(N - 1);
        h[i] = s[i];
    }
    return ProfileMetric(n, std::move(s), std::move(h), std::move(hp),
                         std::move(hpp), inner, outer, true);
}

ProfileMetric cylinder_profile(int n, double c, double s_min, double s_max,
                               std::size_t N, EndFlag inner, EndFlag outer) {
    if (!(c > 0.0) || !(s_max > s_min))
        throw Error("cylinder_profile: need c > 0 and s_min < s_max");
    std::vector<double> s(N), h(N, c), hp(N, 0.0), hpp(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        s[i] = s_min + (s_max - s_min) * static_cast<double>(i) /
                           static_cast<double>(N - 1);
    return ProfileMetric(n, std::move(s), std::move(h), std::move(hp),
                         std::move(hpp), inner, outer, true);
}

ProfileMetric schwarzschild_profile(int n, double m, double r_min,
                                    double r_max, std::size_t N, EndFlag inner,
                                    EndFlag outer) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw Error("schwarzschild_profile: need 0 < r_min < r_max");
    const auto W2 = [&](double r) {
        return 1.0 - 2.0 * m * std::pow(r, 2.0 - n);
    };
    if (W2(r_min) < -1e-14)
        throw Error("schwarzschild_profile: r_min inside horizon");
    std::vector<double> r(N);
    const double ratio = std::log(r_max / r_min);
    for (std::size_t i = 0; i < N; ++i)
        r[i] = r_min * std::exp(ratio * static_cast<double>(i) /
                                static_cast<double>(N - 1));
    r.front() = r_min;
    r.back() = r_max;
    // Arclength: ds = dr / sqrt(W2). The integrand has a sqrt singularity at
    // the horizon; substitute r = r_min + x^2 near it when needed.
    std::vector<double> s(N), hp(N), hpp(N);
    s[0] = r_min;
    const auto dsdr = [&](double rr) {
        const double w2 = std::max(W2(rr), 0.0);
        return w2 > 0.0 ? 1.0 / std::sqrt(w2) : 0.0;
    };
    for (std::size_t i = 1; i < N; ++i) {
        double seg;
        if (W2(r[i - 1]) < 1e-8) {
            // integrate in x = sqrt(r - r[i-1]) to defuse the sqrt blow-up
            const double x1 = std::sqrt(r[i] - r[i - 1]);
            seg = integrate_gauss(
                [&](double x) { return 2.0 * x * dsdr(r[i - 1] + x * x); }, 0.0,
                x1);
        } else {
            seg = integrate_gauss(dsdr, r[i - 1], r[i]);
        }
        s[i] = s[i - 1] + seg;
    }
    for (std::size_t i = 0; i < N; ++i) {
        hp[i] = std::sqrt(std::max(W2(r[i]), 0.0));
        hpp[i] = m * (n - 2) * std::pow(r[i], 1.0 - n);
    }
    return ProfileMetric(n, std::move(s), std::move(r), std::move(hp),
                         std::move(hpp), inner, outer, true);
}

ProfileMetric profile_from_csv(int n, const std::string& path, EndFlag inner,
                               EndFlag outer) {
    std::ifstream in(path);
    if (!in) throw Error("profile_from_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error("profile_from_csv: empty file " + path);
    std::vector<double> s, h;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            throw Error("profile_from_csv: malformed row in " + path);
        s.push_back(std::stod(a));
        h.push_back(std::stod(b));
    }
    return ProfileMetric(n, std::move(s), std::move(h), inner, outer);
}

// ---------------------------------------------------------------------------
// Operations

double scalar_curvature(const ProfileMetric& m, std::size_t i) {
    if (i >= m.size()) throw Error("scalar_curvature: index out of range");
    const int n = m.dim();
    const double h = m.h(i), hp = m.hp(i), hpp = m.hpp(i);
    return -2.0 * (n - 1) * hpp / h +
           (n - 1) * (n - 2) * (1.0 - hp * hp) / (h * h);
}

RicciEigenvalues ricci_curvature(const ProfileMetric& m, std::size_t i) {
    if (i >= m.size()) throw Error("ricci_curvature: index out of range");
    const int n = m.dim();
    const double h = m.h(i), hp = m.hp(i), hpp = m.hpp(i);
    return {-(n - 1) * hpp / h,
            -hpp / h + (n - 2) * (1.0 - hp * hp) / (h * h)};
}

double ricci_max_abs(const ProfileMetric& m, std::size_t i) {
    const auto r = ricci_curvature(m, i);
    return std::max(std::abs(r.radial), std::abs(r.tangential));
}

double mean_curvature_sphere(const ProfileMetric& m, std::size_t i,
                             int orientation) {
    if (i >= m.size()) throw Error("mean_curvature_sphere: index out of range");
    if (orientation != 1 && orientation != -1)
        throw Error("mean_curvature_sphere: orientation must be +1 or -1");
    return orientation * (m.dim() - 1) * m.hp(i) / m.h(i);
}

double misner_sharp_mass(const ProfileMetric& m, std::size_t i) {
    if (i >= m.size()) throw Error("misner_sharp_mass: index out of range");
    const double h = m.h(i), hp = m.hp(i);
    return 0.5 * std::pow(h, m.dim() - 2) * (1.0 - hp * hp);
}

namespace {

// Least-squares fit y ~= c0 + c1 x + c2 x^2; returns c0.
double quadratic_intercept(const std::vector<double>& x,
                           const std::vector<double>& y) {
    // Rescale x to O(1) before forming the normal equations: the intercept is
    // invariant and the conditioning is vastly better for x ~ h^{2-n} << 1.
    const double xmax = *std::max_element(x.begin(), x.end());
    if (!(xmax > 0.0)) throw Error("adm_mass: degenerate fit");
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i] / xmax, yi = y[i];
        const double xi2 = xi * xi;
        s0 += 1;
        s1 += xi;
        s2 += xi2;
        s3 += xi2 * xi;
        s4 += xi2 * xi2;
        t0 += yi;
        t1 += xi * yi;
        t2 += xi2 * yi;
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s3 * s2) +
                       s2 * (s1 * s3 - s2 * s2);
    if (std::abs(det) < 1e-300) throw Error("adm_mass: degenerate fit");
    const double det0 = t0 * (s2 * s4 - s3 * s3) - s1 * (t1 * s4 - s3 * t2) +
                        s2 * (t1 * s3 - s2 * t2);
    return det0 / det;
}

double extrapolate_to_infinity(const std::vector<double>& x,
                               const std::vector<double>& y) {
    // Fit over the full window and over its closer half; the two intercepts
    // must agree, otherwise the sequence has not settled.
    const double full = quadratic_intercept(x, y);
    std::vector<double> xh, yh;
    const double x_cut = 0.5 * (*std::max_element(x.begin(), x.end()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= x_cut) {
            xh.push_back(x[i]);
            yh.push_back(y[i]);
        }
    }
    if (xh.size() >= 8) {
        const double half = quadratic_intercept(xh, yh);
        const double scale = std::max({std::abs(full), std::abs(half), 1.0});
        if (std::abs(full - half) > 1e-3 * scale)
            throw Error("adm_mass: extrapolation did not converge");
        return half;
    }
    return full;
}

}  // namespace

AdmMass adm_mass(const ProfileMetric& m, End end) {
    if (m.end(end) != EndFlag::AsymptoticallyFlat)
        throw Error("adm_mass: end is not flagged asymptotically flat");
    if (end == End::Inner)
        throw Error("adm_mass: asymptotically flat inner end not supported");
    const int n = m.dim();
    const std::size_t N = m.size();
    const double h_top = m.h(N - 1);
    const double h_cut = h_top / 10.0;
    std::vector<double> x, y_ms, y_flux;
    for (std::size_t i = 0; i < N; ++i) {
        if (m.h(i) < h_cut) continue;
        const double hp = m.hp(i);
        if (!(hp > 0.0)) continue;
        x.push_back(std::pow(m.h(i), 2.0 - n));
        y_ms.push_back(misner_sharp_mass(m, i));
        // Def.-2.4 coordinate flux integral, reduced by spherical symmetry:
        // the chart g_ij = delta_ij + (h'^{-2}-1) x_i x_j/|x|^2 gives
        //   (1 / (2(n-1) omega_{n-1})) Int (g_ij,i - g_ii,j) x^j/|x|
        //     = (h'^{-2} - 1) h^{n-2} / 2  at |x| = h.
        y_flux.push_back(0.5 * (1.0 / (hp * hp) - 1.0) *
                         std::pow(m.h(i), n - 2));
    }
    if (x.size() < 16) throw Error("adm_mass: too few samples in the end");
    AdmMass out;
    out.value = extrapolate_to_infinity(x, y_ms);
    out.flux_value = extrapolate_to_infinity(x, y_flux);
    return out;
}

double distance(const ProfileMetric& m, double s_a, double s_b) {
    const double lo = m.s_min() - 1e-12, hi = m.s_max() + 1e-12;
    if (s_a < lo || s_a > hi || s_b < lo || s_b > hi)
        throw Error("distance: point out of grid range");
    return std::abs(s_b - s_a);
}

double integrate(const ProfileMetric& m, const std::vector<double>& f,
                 double s_a, double s_b) {
    if (f.size() != m.size()) throw Error("integrate: sample size mismatch");
    if (s_a > s_b) std::swap(s_a, s_b);
    if (s_a < m.s_min() - 1e-12 || s_b > m.s_max() + 1e-12)
        throw Error("integrate: range outside grid");
    const double omega = unit_sphere_volume(m.dim());
    const auto dens = [&](std::size_t i) {
        return f[i] * omega * std::pow(m.h(i), m.dim() - 1);
    };
    const auto dens_at = [&](double s) {
        const std::size_t i = bracket_index(m.grid(), s);
        const double t = (s - m.s(i)) / (m.s(i + 1) - m.s(i));
        return (1.0 - t) * dens(i) + t * dens(i + 1);
    };
    double sum = 0.0;
    const std::size_t i0 = bracket_index(m.grid(), s_a);
    const std::size_t i1 = bracket_index(m.grid(), s_b);
    if (i0 == i1) {
        return 0.5 * (dens_at(s_a) + dens_at(s_b)) * (s_b - s_a);
    }
    sum += 0.5 * (dens_at(s_a) + dens(i0 + 1)) * (m.s(i0 + 1) - s_a);
    for (std::size_t i = i0 + 1; i < i1; ++i)
        sum += 0.5 * (dens(i) + dens(i + 1)) * (m.s(i + 1) - m.s(i));
    sum += 0.5 * (dens(i1) + dens_at(s_b)) * (s_b - m.s(i1));
    return sum;
}

double integrate(const ProfileMetric& m,
                 const std::function<double(double)>& f, double s_a,
                 double s_b) {
    std::vector<double> samples(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) samples[i] = f(m.s(i));
    return integrate(m, samples, s_a, s_b);
}

}  // namespace masscheck

#include "masscheck/corner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace masscheck {

// ---------------------------------------------------------------------------
// Mollifier

namespace {

double raw_bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double raw_bump_deriv(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double d = 1.0 - u * u;
    return raw_bump(u) * (-2.0 * u) / (d * d);
}

}  // namespace

Mollifier Mollifier::standard_bump() {
    Mollifier m;
    const std::size_t N = 16385;
    m.u_.resize(N);
    m.phi_.resize(N);
    m.dphi_.resize(N);
    m.cdf_.resize(N);
    for (std::size_t i = 0; i < N; ++i)
        m.u_[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(N - 1);
    const double mass = integrate_adaptive(raw_bump, -1.0, 1.0, 1e-14);
    for (std::size_t i = 0; i < N; ++i) {
        m.phi_[i] = raw_bump(m.u_[i]) / mass;
        m.dphi_[i] = raw_bump_deriv(m.u_[i]) / mass;
    }
    m.cdf_[0] = 0.0;
    for (std::size_t i = 1; i < N; ++i)
        m.cdf_[i] = m.cdf_[i - 1] +
                    integrate_gauss([&](double u) { return raw_bump(u) / mass; },
                                    m.u_[i - 1], m.u_[i]);
    m.cdf_.back() = 1.0;
    m.validate();
    return m;
}

Mollifier Mollifier::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("Mollifier::from_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error("Mollifier::from_csv: empty file " + path);
    Mollifier m;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            throw Error("Mollifier::from_csv: malformed row in " + path);
        m.u_.push_back(std::stod(a));
        m.phi_.push_back(std::stod(b));
    }
    if (m.u_.size() < 33)
        throw Error("Mollifier::from_csv: need at least 33 samples");
    if (std::abs(m.u_.front() + 1.0) > 1e-12 || std::abs(m.u_.back() - 1.0) > 1e-12)
        throw Error("Mollifier::from_csv: samples must cover [-1, 1]");
    const std::size_t N = m.u_.size();
    // Cumulative mass by trapezoid; the kernel must already be normalized.
    m.cdf_.assign(N, 0.0);
    for (std::size_t i = 1; i < N; ++i) {
        if (!(m.u_[i] > m.u_[i - 1]))
            throw Error("Mollifier::from_csv: nodes must be strictly increasing");
        m.cdf_[i] = m.cdf_[i - 1] + 0.5 * (m.phi_[i] + m.phi_[i - 1]) *
                                        (m.u_[i] - m.u_[i - 1]);
    }
    const double mass = m.cdf_.back();
    if (std::abs(mass - 1.0) > 1e-8)
        throw Error("Mollifier::from_csv: kernel mass differs from 1");
    for (std::size_t i = 0; i < N; ++i) {
        m.phi_[i] /= mass;
        m.cdf_[i] /= mass;
    }
    // Derivative by centered differences on the (possibly nonuniform) nodes.
    m.dphi_.assign(N, 0.0);
    for (std::size_t i = 1; i + 1 < N; ++i)
        m.dphi_[i] = (m.phi_[i + 1] - m.phi_[i - 1]) / (m.u_[i + 1] - m.u_[i - 1]);
    m.validate();
    return m;
}

void Mollifier::validate() const {
    for (double v : phi_)
        if (v < -1e-12) throw Error("Mollifier: kernel must be nonnegative");
    if (std::abs(phi_.front()) > 1e-10 || std::abs(phi_.back()) > 1e-10)
        throw Error("Mollifier: kernel must vanish at the support boundary");
    if (std::abs(cdf_.back() - 1.0) > 1e-8)
        throw Error("Mollifier: kernel mass differs from 1");
}

namespace {

double interp_linear(const std::vector<double>& x, const std::vector<double>& y,
                     double v) {
    const std::size_t i = bracket_index(x, v);
    const double t = (v - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - t) * y[i] + t * y[i + 1];
}

}  // namespace

double Mollifier::phi(double u) const {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return interp_linear(u_, phi_, u);
}

double Mollifier::dphi(double u) const {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return interp_linear(u_, dphi_, u);
}

double Mollifier::cdf(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const std::size_t i = bracket_index(u_, u);
    // Trapezoid-consistent quadratic segment.
    const double pm = phi(u);
    return cdf_[i] + 0.5 * (phi_[i] + pm) * (u - u_[i]);
}

// ---------------------------------------------------------------------------
// CornerMetric

CornerMetric::CornerMetric(ProfileMetric left, ProfileMetric right,
                           double h_match_tol)
    : left_(std::move(left)), right_(std::move(right)),
      s0_(left_.s_max()) {
    if (left_.dim() != right_.dim())
        throw Error("CornerMetric: dimension mismatch");
    const double hl = left_.h(left_.size() - 1);
    const double hr = right_.h(0);
    if (std::abs(hl - hr) > h_match_tol * std::max(1.0, std::abs(hl)))
        throw Error("CornerMetric: warping function is discontinuous at the corner");
}

void CornerMetric::eval(double s, int side, double& h, double& hp,
                        double& hpp) const {
    const bool use_left = s < s0_ || (s == s0_ && side < 0);
    if (use_left) {
        if (s < left_.s_min() - 1e-12)
            throw Error("CornerMetric::eval: s below the inner boundary");
        left_.eval(std::max(s, left_.s_min()), h, hp, hpp);
    } else {
        const double sr = to_right_coord(s);
        if (sr > right_.s_max() + 1e-12)
            throw Error("CornerMetric::eval: s beyond the outer boundary");
        right_.eval(std::min(sr, right_.s_max()), h, hp, hpp);
    }
}

MeanCurvatureGap CornerMetric::mean_curvature_gap() const {
    const int n = dim();
    const double h = corner_h();
    const double hp_minus = left_.hp(left_.size() - 1);
    const double hp_plus = right_.hp(0);
    return {(n - 1) * hp_minus / h, (n - 1) * hp_plus / h};
}

double CornerMetric::max_delta() const {
    const double span_left = s0_ - left_.s_min();
    return 0.9 * std::min(span_left, right_span());
}

// ---------------------------------------------------------------------------
// SmoothedCorner

namespace {

// C^2 compensation bump supported in (lo, hi), unit mass:
// q(x) = 140 x^3 (1-x)^3 on (0, 1).
double comp_bump(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double y = x * (1.0 - x);
    return 140.0 * y * y * y;
}

double comp_bump_deriv(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double y = x * (1.0 - x);
    return 420.0 * y * y * (1.0 - 2.0 * x);
}

}  // namespace

SmoothedCorner::SmoothedCorner(const CornerMetric& corner, double delta,
                               const Mollifier& kernel)
    : corner_(corner), kernel_(kernel), delta_(delta) {
    eps_ = delta * delta / 100.0;
    const double span_left = corner_.corner_s() - corner_.left().s_min();
    const double span_right = corner_.right_span();
    if (!(delta > 0.0))
        throw Error("SmoothedCorner: smoothing width must be positive");
    if (delta + eps_ > std::min(span_left, span_right))
        throw Error("SmoothedCorner: smoothing width exceeds the available collar");
    const auto gap = corner_.mean_curvature_gap();
    jump_ = (gap.outer - gap.inner) * corner_.corner_h() / (corner_.dim() - 1);

    // Volume compensation: kappa = Int_{-delta}^{delta} (A - h') dt, so that
    // h_delta' = A - kappa * psi integrates to the original warp increment and
    // the metric is untouched outside U_delta.
    kappa_ = 0.0;
    const auto nodes = inner_grid();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        kappa_ += integrate_gauss(
            [&](double t) { return blended(t) - original_hp(t); }, nodes[i],
            nodes[i + 1]);

    // Cumulative integral of h_delta' on the graded grid.
    node_t_ = nodes;
    node_h_.assign(nodes.size(), 0.0);
    double h0, hp0, hpp0;
    corner_.eval(corner_.corner_s() - delta_, -1, h0, hp0, hpp0);
    node_h_[0] = h0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double seg = integrate_gauss(
            [&](double t) {
                return blended(t) - kappa_ * bump(t);
            },
            nodes[i], nodes[i + 1]);
        node_h_[i + 1] = node_h_[i] + seg;
    }
    node_hp_.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        node_hp_[i] = blended(nodes[i]) - kappa_ * bump(nodes[i]);
}

std::vector<double> SmoothedCorner::inner_grid() const {
    // Graded nodes on [-delta, delta]: fine near the kernel scale epsilon,
    // moderate elsewhere, fine again on the compensation-bump support.
    std::vector<double> t;
    auto fill = [&](double a, double b, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            t.push_back(a + (b - a) * static_cast<double>(i) /
                                static_cast<double>(k));
    };
    fill(-delta_, -delta_ / 2.0, 64);
    fill(-delta_ / 2.0, -eps_, 64);
    fill(-eps_, eps_, 128);
    fill(eps_, delta_ / 2.0, 64);
    fill(delta_ / 2.0, delta_, 128);
    t.push_back(delta_);
    return t;
}

double SmoothedCorner::original_hp(double t) const {
    double h, hp, hpp;
    corner_.eval(corner_.corner_s() + t, t < 0.0 ? -1 : +1, h, hp, hpp);
    return hp;
}

double SmoothedCorner::p(double t) const {
    return original_hp(t) - (t >= 0.0 ? jump_ : 0.0);
}

double SmoothedCorner::dp(double t) const {
    double h, hp, hpp;
    corner_.eval(corner_.corner_s() + t, t < 0.0 ? -1 : +1, h, hp, hpp);
    return hpp;
}

double SmoothedCorner::conv(double t) const {
    // (p * phi_eps)(t) = Int phi(u) p(t - eps u) du over (-1, 1), split at the
    // kink u = t/eps when it lies inside the support.
    std::vector<double> cuts{-1.0};
    const double kink = t / eps_;
    for (double c : {-0.5, 0.0, 0.5})
        cuts.push_back(c);
    if (kink > -1.0 && kink < 1.0) cuts.push_back(kink);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    double out = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        // Two panels per cut interval for the flat-ended kernel.
        const double mid = 0.5 * (a + b);
        for (auto [lo, hi] : {std::pair{a, mid}, std::pair{mid, b}})
            out += integrate_gauss(
                [&](double u) { return kernel_.phi(u) * p(t - eps_ * u); }, lo,
                hi);
    }
    return out;
}

double SmoothedCorner::dconv(double t) const {
    std::vector<double> cuts{-1.0};
    const double kink = t / eps_;
    for (double c : {-0.5, 0.0, 0.5})
        cuts.push_back(c);
    if (kink > -1.0 && kink < 1.0) cuts.push_back(kink);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    double out = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b);
        for (auto [lo, hi] : {std::pair{a, mid}, std::pair{mid, b}})
            out += integrate_gauss(
                [&](double u) { return kernel_.phi(u) * dp(t - eps_ * u); }, lo,
                hi);
    }
    return out;
}

double SmoothedCorner::blended(double t) const {
    const double at = std::abs(t);
    const double chi = 1.0 - smoothstep5((at - delta_ / 2.0) / (delta_ / 2.0));
    const double theta = t >= 0.0 ? 1.0 : 0.0;
    if (chi == 0.0) return p(t) + jump_ * theta;  // untouched region
    const double smeared = kernel_.cdf(t / eps_);
    return p(t) + chi * (conv(t) - p(t)) +
           jump_ * ((1.0 - chi) * theta + chi * smeared);
}

double SmoothedCorner::blended_deriv(double t) const {
    const double at = std::abs(t);
    const double half = delta_ / 2.0;
    const double chi = 1.0 - smoothstep5((at - half) / half);
    const double sgn = t >= 0.0 ? 1.0 : -1.0;
    const double dchi = -sgn * smoothstep5_deriv((at - half) / half) / half;
    const double theta = t >= 0.0 ? 1.0 : 0.0;
    if (chi == 1.0) {
        // Pure mollified regime: A = conv + jump * cdf(t/eps).
        return dconv(t) + jump_ * kernel_.phi(t / eps_) / eps_;
    }
    if (chi == 0.0) return dp(t);
    const double smeared = kernel_.cdf(t / eps_);
    return dp(t) + dchi * (conv(t) - p(t)) + chi * (dconv(t) - dp(t)) +
           jump_ * (dchi * (smeared - theta) + chi * kernel_.phi(t / eps_) / eps_);
}

double SmoothedCorner::bump(double t) const {
    const double lo = delta_ / 2.0, hi = 0.9 * delta_;
    return comp_bump((t - lo) / (hi - lo)) / (hi - lo);
}

double SmoothedCorner::dbump(double t) const {
    const double lo = delta_ / 2.0, hi = 0.9 * delta_;
    const double w = hi - lo;
    return comp_bump_deriv((t - lo) / w) / (w * w);
}

double SmoothedCorner::h(double s) const {
    const double t = s - corner_.corner_s();
    if (t <= -delta_ || t >= delta_) {
        double h0, hp0, hpp0;
        corner_.eval(s, t < 0.0 ? -1 : +1, h0, hp0, hpp0);
        return h0;
    }
    // Cubic Hermite between graded nodes; the grading keeps the interpolation
    // error far below the construction tolerances.
    const std::size_t i = bracket_index(node_t_, t);
    const double d = node_t_[i + 1] - node_t_[i];
    const double x = (t - node_t_[i]) / d;
    const double x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * node_h_[i] +
           (x3 - 2 * x2 + x) * d * node_hp_[i] +
           (-2 * x3 + 3 * x2) * node_h_[i + 1] +
           (x3 - x2) * d * node_hp_[i + 1];
}

double SmoothedCorner::hp(double s) const {
    const double t = s - corner_.corner_s();
    if (t <= -delta_ || t >= delta_) return original_hp(t);
    return blended(t) - kappa_ * bump(t);
}

double SmoothedCorner::hpp(double s) const {
    const double t = s - corner_.corner_s();
    if (t <= -delta_ || t >= delta_) return dp(t);
    return blended_deriv(t) - kappa_ * dbump(t);
}

double SmoothedCorner::scalar_curvature(double s) const {
    const int n = dim();
    const double hh = h(s), h1 = hp(s), h2 = hpp(s);
    return -2.0 * (n - 1) * h2 / hh +
           (n - 1) * (n - 2) * (1.0 - h1 * h1) / (hh * hh);
}

double SmoothedCorner::ricci_max_abs(double s) const {
    const int n = dim();
    const double hh = h(s), h1 = hp(s), h2 = hpp(s);
    const double rad = -(n - 1) * h2 / hh;
    const double tan = -h2 / hh + (n - 2) * (1.0 - h1 * h1) / (hh * hh);
    return std::max(std::abs(rad), std::abs(tan));
}

double SmoothedCorner::spike_integral() const {
    const int n = dim();
    const double omega = unit_sphere_volume(n);
    const double s0 = corner_.corner_s();
    double out = 0.0;
    for (std::size_t i = 0; i + 1 < node_t_.size(); ++i)
        out += integrate_gauss(
            [&](double t) {
                const double s = s0 + t;
                return scalar_curvature(s) * omega * std::pow(h(s), n - 1);
            },
            node_t_[i], node_t_[i + 1]);
    return out;
}

double SmoothedCorner::negative_part_l1() const {
    const int n = dim();
    const double omega = unit_sphere_volume(n);
    const double s0 = corner_.corner_s();
    double out = 0.0;
    for (std::size_t i = 0; i + 1 < node_t_.size(); ++i)
        out += integrate_gauss(
            [&](double t) {
                const double s = s0 + t;
                return std::max(-scalar_curvature(s), 0.0) * omega *
                       std::pow(h(s), n - 1);
            },
            node_t_[i], node_t_[i + 1]);
    return out;
}

double SmoothedCorner::c0_distance() const {
    const double s0 = corner_.corner_s();
    double sup = 0.0;
    for (std::size_t i = 0; i < node_t_.size(); ++i) {
        for (double frac : {0.0, 0.5}) {
            if (frac > 0.0 && i + 1 == node_t_.size()) continue;
            const double t = frac == 0.0
                                 ? node_t_[i]
                                 : 0.5 * (node_t_[i] + node_t_[i + 1]);
            double h0, hp0, hpp0;
            corner_.eval(s0 + t, t < 0.0 ? -1 : +1, h0, hp0, hpp0);
            sup = std::max(sup, std::abs(h(s0 + t) - h0));
        }
    }
    return sup;
}

double SmoothedCorner::c1_distance() const {
    const double s0 = corner_.corner_s();
    double sup = 0.0;
    for (std::size_t i = 0; i < node_t_.size(); ++i) {
        for (double frac : {0.0, 0.5}) {
            if (frac > 0.0 && i + 1 == node_t_.size()) continue;
            const double t = frac == 0.0
                                 ? node_t_[i]
                                 : 0.5 * (node_t_[i] + node_t_[i + 1]);
            sup = std::max(sup, std::abs(hp(s0 + t) - original_hp(t)));
        }
    }
    return sup;
}

ProfileMetric SmoothedCorner::to_profile() const {
    const double s0 = corner_.corner_s();
    const ProfileMetric& L = corner_.left();
    const ProfileMetric& R = corner_.right();
    std::vector<double> s, h_out, hp_out, hpp_out;
    // Original left samples outside U_delta, copied bitwise.
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (L.s(i) >= s0 - delta_) break;
        s.push_back(L.s(i));
        h_out.push_back(L.h(i));
        hp_out.push_back(L.hp(i));
        hpp_out.push_back(L.hpp(i));
    }
    // Graded construction nodes inside.
    for (std::size_t i = 0; i < node_t_.size(); ++i) {
        const double t = node_t_[i];
        const double ss = s0 + t;
        if (!s.empty() && ss <= s.back() + 1e-14) continue;
        s.push_back(ss);
        h_out.push_back(node_h_[i]);
        hp_out.push_back(hp(ss));
        hpp_out.push_back(hpp(ss));
    }
    // Original right samples outside U_delta.
    const bool aligned = R.s_min() == s0;
    for (std::size_t i = 0; i < R.size(); ++i) {
        const double ss = aligned ? R.s(i) : s0 + (R.s(i) - R.s_min());
        if (ss <= s0 + delta_) continue;
        s.push_back(ss);
        h_out.push_back(R.h(i));
        hp_out.push_back(R.hp(i));
        hpp_out.push_back(R.hpp(i));
    }
    return ProfileMetric(corner_.dim(), std::move(s), std::move(h_out),
                         std::move(hp_out), std::move(hpp_out),
                         L.end(End::Inner), R.end(End::Outer),
                         L.analytic() && R.analytic());
}

}  // namespace masscheck

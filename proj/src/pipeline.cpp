#include "masscheck/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "masscheck/bartnik.hpp"
#include "masscheck/conformal.hpp"
#include "masscheck/corner.hpp"
#include "masscheck/eigenvalue.hpp"
#include "masscheck/geometry.hpp"

namespace masscheck {

namespace {

struct DeltaRow {
    double delta = 0.0;
    bool solved = false;
    std::string status = "ok";
    double c0 = 0.0, c1 = 0.0, neg_l1 = 0.0, spike = 0.0;
    double min_conformal_scalar = 0.0;
    double mass_formula = 0.0, mass_direct = 0.0;
    double mu1 = 0.0;
};

DeltaRow process_delta(const CornerMetric& corner, const Mollifier& kernel,
                       double delta) {
    DeltaRow row;
    row.delta = delta;
    try {
        SmoothedCorner sm(corner, delta, kernel);
        row.c0 = sm.c0_distance();
        row.c1 = sm.c1_distance();
        row.neg_l1 = sm.negative_part_l1();
        row.spike = sm.spike_integral();
        ProfileMetric prof = sm.to_profile();

        std::vector<double> V = negative_curvature_potential(prof);
        ConformalSolution sol = solve_conformal(prof, V);
        double min_scalar = 1e300;
        for (std::size_t i = 0; i < prof.size(); ++i)
            min_scalar = std::min(min_scalar, sol.conformal_scalar(i));
        row.min_conformal_scalar = min_scalar;

        MassChange mc = mass_change(sol);
        row.mass_formula = mc.formula;
        row.mass_direct = mc.direct;

        std::vector<double> R(prof.size());
        for (std::size_t i = 0; i < prof.size(); ++i)
            R[i] = scalar_curvature(prof, i);
        const double s0 = corner.corner_s();
        EigenDomain window{std::max(prof.s_min(), s0 - 1.0),
                           std::min(prof.s_max(), s0 + 1.5)};
        row.mu1 = neumann_principal_eigenvalue(prof, R, window).value;
        row.solved = true;
    } catch (const Error& e) {
        row.status = e.what();
    }
    return row;
}

std::vector<DeltaRow> run_sweep(const CornerMetric& corner,
                                const std::vector<double>& deltas,
                                unsigned jobs) {
    const Mollifier kernel = Mollifier::standard_bump();
    std::vector<DeltaRow> rows(deltas.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs, deltas.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < deltas.size(); ++i)
            rows[i] = process_delta(corner, kernel, deltas[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next.fetch_add(1); i < deltas.size();
                 i = next.fetch_add(1))
                rows[i] = process_delta(corner, kernel, deltas[i]);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    // Deterministic order regardless of scheduling.
    std::sort(rows.begin(), rows.end(),
              [](const DeltaRow& a, const DeltaRow& b) {
                  return a.delta > b.delta;
              });
    return rows;
}

Table sweep_table(const std::vector<DeltaRow>& rows) {
    Table t;
    t.name = "sweep";
    t.columns = {"delta",        "c0_distance",      "c1_distance",
                 "negative_part", "spike_integral",  "min_conformal_scalar",
                 "mass_formula",  "mass_direct",     "mu1",
                 "status"};
    t.provenance = {"scenario.deltas",
                    "smoothed_corner.c0_distance",
                    "smoothed_corner.c1_distance",
                    "smoothed_corner.negative_part_l1",
                    "smoothed_corner.spike_integral",
                    "conformal_solution.conformal_scalar (min)",
                    "mass_change.formula",
                    "mass_change.direct",
                    "neumann_principal_eigenvalue",
                    "pipeline"};
    for (const auto& r : rows) {
        if (r.solved) {
            t.rows.push_back({format_number(r.delta), format_number(r.c0),
                              format_number(r.c1), format_number(r.neg_l1),
                              format_number(r.spike),
                              format_number(r.min_conformal_scalar),
                              format_number(r.mass_formula),
                              format_number(r.mass_direct),
                              format_number(r.mu1), r.status});
        } else {
            t.rows.push_back({format_number(r.delta), format_number(r.c0),
                              format_number(r.c1), format_number(r.neg_l1),
                              format_number(r.spike), "", "", "", "",
                              r.status});
        }
    }
    return t;
}

const DeltaRow* final_row(const std::vector<DeltaRow>& rows) {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (it->solved) return &*it;
    return nullptr;
}

/// Shared verdict logic for a glued corner: smooth, correct, and check signs.
void corner_verdict(Report& rep, const CornerMetric& corner,
                    const std::vector<DeltaRow>& rows,
                    const ToleranceProfile& tol) {
    const MeanCurvatureGap gap = corner.mean_curvature_gap();
    rep.summary.push_back({"H_minus", format_number(gap.inner),
                           "corner.mean_curvature_gap"});
    rep.summary.push_back({"H_plus", format_number(gap.outer),
                           "corner.mean_curvature_gap"});
    rep.summary.push_back({"mean_curvature_jump", format_number(gap.jump()),
                           "corner.mean_curvature_gap"});

    const DeltaRow* fin = final_row(rows);
    if (fin) {
        rep.summary.push_back({"final_mass_formula",
                               format_number(fin->mass_formula),
                               "mass_change.formula"});
        rep.summary.push_back({"final_mass_direct",
                               format_number(fin->mass_direct),
                               "mass_change.direct"});
    }
    for (const auto& r : rows)
        if (!r.solved)
            rep.notes.push_back("width " + format_number(r.delta) +
                                " not solvable: " + r.status);

    if (!fin) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("no sweep width completed; nothing to certify");
        return;
    }
    if (gap.jump() < -1e-10) {
        rep.verdict = Verdict::HypothesisViolated;
        rep.notes.push_back(
            "outer mean curvature exceeds inner mean curvature at the "
            "corner; final mass " +
            format_number(fin->mass_formula));
        return;
    }
    bool scalar_ok = true;
    for (const auto& r : rows)
        if (r.solved && r.min_conformal_scalar < -tol.scalar_floor)
            scalar_ok = false;
    const bool mass_ok = fin->mass_formula >= -tol.mass_floor;
    if (!scalar_ok)
        rep.notes.push_back("corrected scalar curvature dips below floor");
    if (!mass_ok)
        rep.notes.push_back("corrected mass is negative beyond tolerance");
    rep.verdict = scalar_ok && mass_ok ? Verdict::Pass : Verdict::Fail;

    // Rigidity signature: a glued manifold with (numerically) zero mass must
    // have matching mean curvatures and a flat exterior.
    if (rep.verdict == Verdict::Pass &&
        std::abs(fin->mass_formula) <= tol.rigidity_tol) {
        SmoothedCorner sm(corner, fin->delta, Mollifier::standard_bump());
        ProfileMetric prof = sm.to_profile();
        double ric = 0.0;
        for (std::size_t i = 0; i < prof.size(); ++i)
            ric = std::max(ric, ricci_max_abs(prof, i));
        rep.summary.push_back({"rigidity_max_ricci", format_number(ric),
                               "ricci_max_abs (max over samples)"});
        rep.summary.push_back({"rigidity_mean_curvature_gap",
                               format_number(gap.jump()),
                               "corner.mean_curvature_gap"});
    }
}

CornerMetric build_corner(const CornerScenario& c) {
    if (!(c.inner_radius > 0.0) ||
        !(c.interface_radius > c.inner_radius))
        throw Error("corner scenario: radii must satisfy 0 < inner < interface");
    ProfileMetric left = flat_profile(c.dimension, c.inner_radius,
                                      c.interface_radius, c.interior_samples);
    const double mass = c.exterior == "flat" ? 0.0 : c.exterior_mass;
    ProfileMetric right =
        schwarzschild_profile(c.dimension, mass, c.interface_radius,
                              c.outer_radius, c.exterior_samples);
    return CornerMetric(std::move(left), std::move(right));
}

}  // namespace

Report run_corner_positive_mass(const Scenario& sc, unsigned jobs) {
    Report rep;
    rep.title = "corner positive-mass verification: " + sc.name;
    const CornerScenario& c = sc.corner;
    CornerMetric corner = build_corner(c);
    rep.summary.push_back(
        {"dimension", format_number(c.dimension), "scenario"});
    rep.summary.push_back({"interface_radius",
                           format_number(c.interface_radius), "scenario"});
    rep.summary.push_back(
        {"exterior_mass",
         format_number(c.exterior == "flat" ? 0.0 : c.exterior_mass),
         "scenario"});

    auto rows = run_sweep(corner, sc.deltas, jobs);
    rep.tables.push_back(sweep_table(rows));
    corner_verdict(rep, corner, rows, sc.tolerances);
    return rep;
}

Report run_shi_tam(const Scenario& sc, unsigned jobs) {
    Report rep;
    rep.title = "boundary-data fill-in verification: " + sc.name;
    const ShiTamScenario& t = sc.shi_tam;
    const int n = t.dimension;

    BartnikData data(n, t.radius, t.eta);
    const double mby = brown_york(data);
    rep.summary.push_back({"brown_york_mass", format_number(mby),
                           "brown_york"});

    // Fill-in realizing the boundary data.
    ProfileMetric fill = [&]() -> ProfileMetric {
        if (t.fill_in == "flat_ball")
            return flat_profile(n, 0.01 * t.radius, t.radius,
                                t.fill_in_samples);
        if (!(t.fill_in_length > 0.0))
            throw Error("fill-in scenario: length must be positive");
        const EndFlag inner = t.fill_in == "truncated_cylinder"
                                  ? EndFlag::TruncatedIncomplete
                                  : EndFlag::CompleteOther;
        return cylinder_profile(n, t.radius, 0.0, t.fill_in_length,
                                t.fill_in_samples, inner, EndFlag::Boundary);
    }();

    // Boundary data must match: same sphere radius (by construction) and the
    // fill-in's boundary mean curvature equal to eta.
    const double H_fill =
        mean_curvature_sphere(fill, fill.size() - 1, +1);
    if (std::abs(H_fill - t.eta) > sc.tolerances.match_tol)
        throw Error("fill-in boundary mean curvature " +
                    format_number(H_fill) +
                    " does not match the data eta = " + format_number(t.eta));

    double min_r_fill = 1e300;
    for (std::size_t i = 0; i < fill.size(); ++i)
        min_r_fill = std::min(min_r_fill, scalar_curvature(fill, i));
    rep.summary.push_back({"fill_in_min_scalar", format_number(min_r_fill),
                           "scalar_curvature (min over fill-in)"});

    ShiTamExtension ext = shi_tam_extend(n, t.radius, t.eta,
                                         t.extension_radius,
                                         t.extension_samples);
    rep.summary.push_back({"extension_mass", format_number(ext.c),
                           "shi_tam_extend"});
    double max_r_ext = 0.0;
    for (std::size_t i = 0; i < ext.profile.size(); ++i)
        max_r_ext =
            std::max(max_r_ext, std::abs(scalar_curvature(ext.profile, i)));
    rep.summary.push_back({"extension_max_abs_scalar",
                           format_number(max_r_ext),
                           "scalar_curvature (max over extension)"});

    if (t.lambda) {
        FillInBound fb = verify_fill_in_bound(data, *t.lambda);
        rep.summary.push_back({"mean_curvature_threshold_margin",
                               format_number(fb.margin),
                               "verify_fill_in_bound"});
        if (!fb.satisfied)
            rep.notes.push_back(
                "boundary mean curvature exceeds the supplied threshold");
    }

    CornerMetric corner(fill, ext.profile);
    auto rows = run_sweep(corner, sc.deltas, jobs);
    rep.tables.push_back(sweep_table(rows));
    corner_verdict(rep, corner, rows, sc.tolerances);

    if (min_r_fill < -1e-10) {
        rep.verdict = Verdict::HypothesisViolated;
        rep.notes.push_back("fill-in has negative scalar curvature");
    }

    if (t.shield) {
        const ShieldScenario& s = *t.shield;
        const double end = fill.s_max();
        ShieldReport srep = check_shield(
            fill, ShieldSpec{{s.u0_start, end},
                             {s.u1_start, end},
                             {s.u2_start, end},
                             s.kappa,
                             s.eta});
        Table st;
        st.name = "shield";
        st.columns = {"item", "passed", "margin"};
        st.provenance = {"check_shield", "check_shield", "check_shield"};
        auto add = [&](const char* name, const ShieldItem& item) {
            st.rows.push_back({name, item.passed ? "yes" : "no",
                               format_number(item.margin)});
        };
        add("nonnegative", srep.nonnegative);
        add("curvature_floor", srep.curvature_floor);
        add("boundary_bound", srep.boundary_bound);
        add("width", srep.width);
        rep.tables.push_back(st);
        if (!srep.all() && rep.verdict == Verdict::Pass) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes.push_back(
                "shield conditions not satisfied; truncated fill-in cannot "
                "be certified");
        }
    } else if (fill.end(End::Inner) == EndFlag::TruncatedIncomplete &&
               rep.verdict == Verdict::Pass) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(
            "truncated fill-in without a shield declaration cannot be "
            "certified");
    }
    return rep;
}

Report run_scenario(const Scenario& sc, unsigned jobs) {
    return sc.kind == PipelineKind::CornerPositiveMass
               ? run_corner_positive_mass(sc, jobs)
               : run_shi_tam(sc, jobs);
}

}  // namespace masscheck

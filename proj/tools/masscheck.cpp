// Command-line driver: runs scenario files through the verification
// pipelines and writes CSV + text reports.
//
// Exit codes: 0 all verdicts PASS; 1 any FAIL; 2 usage or parse error;
// 3 HYPOTHESIS-VIOLATED or INCONCLUSIVE present (and no FAIL).

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "masscheck/pipeline.hpp"
#include "masscheck/report.hpp"
#include "masscheck/scenario.hpp"

namespace {

void print_presets() {
    std::printf(
        "analytic profile presets:\n"
        "  flat(n, s_min, s_max)            h(s) = s, Euclidean annulus/ball\n"
        "  cylinder(n, c, s_min, s_max)     h = c, round cylinder of radius c\n"
        "  schwarzschild(n, m, r_min, r_max) vacuum exterior of mass m,\n"
        "                                   arclength gauge, geometric radial "
        "grid\n"
        "\n"
        "scenario pipelines:\n"
        "  corner_positive_mass             flat ball glued to an exterior;\n"
        "                                   smoothing + conformal correction\n"
        "  shi_tam                          round boundary data: Brown-York\n"
        "                                   mass, scalar-flat extension, "
        "gluing\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"masscheck: rotationally symmetric scalar-curvature and "
                 "quasi-local mass verification"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    unsigned jobs = 1;
    std::string tolerance_profile = "default";

    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--out", out_dir, "output directory for reports");
    run->add_option("--jobs", jobs, "concurrent sweep evaluations")
        ->check(CLI::Range(1u, 256u));
    run->add_option("--tolerance-profile", tolerance_profile,
                    "tolerance profile")
        ->check(CLI::IsMember({"strict", "default"}));

    CLI::App* presets =
        app.add_subcommand("presets", "list analytic profile presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (presets->parsed()) {
        print_presets();
        return 0;
    }

    using namespace masscheck;
    Scenario sc;
    try {
        const ToleranceProfile base = tolerance_profile == "strict"
                                          ? ToleranceProfile::strict()
                                          : ToleranceProfile::defaults();
        sc = load_scenario(scenario_path, base);
    } catch (const Error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    }

    try {
        Report rep = run_scenario(sc, jobs);
        emit_report(rep, out_dir);
        std::fputs(report_to_text(rep).c_str(), stdout);
        switch (rep.verdict) {
            case Verdict::Pass: return 0;
            case Verdict::Fail: return 1;
            case Verdict::HypothesisViolated:
            case Verdict::Inconclusive: return 3;
        }
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

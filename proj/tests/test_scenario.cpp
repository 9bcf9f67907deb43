#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "masscheck/pipeline.hpp"
#include "masscheck/report.hpp"
#include "masscheck/scenario.hpp"

using namespace masscheck;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("scenario parsing with defaults") {
    const std::string text =
        "# comment line\n"
        "[pipeline]\n"
        "type = corner_positive_mass\n"
        "name = demo\n"
        "\n"
        "[corner]\n"
        "exterior_mass = 0.5\n";
    Scenario sc = parse_scenario(text);
    CHECK(sc.kind == PipelineKind::CornerPositiveMass);
    CHECK(sc.name == "demo");
    CHECK(sc.corner.dimension == 3);
    CHECK(sc.corner.exterior_mass == doctest::Approx(0.5));
    CHECK(sc.corner.interface_radius == doctest::Approx(2.5));
    // Default sweep, sorted descending.
    REQUIRE(sc.deltas.size() == 4);
    CHECK(sc.deltas.front() == doctest::Approx(0.2));
    CHECK(sc.deltas.back() == doctest::Approx(0.025));
    CHECK(sc.tolerances.scalar_floor == doctest::Approx(1e-8));
}

TEST_CASE("sweep list is parsed and sorted descending") {
    const std::string text =
        "[pipeline]\n"
        "type = corner_positive_mass\n"
        "[sweep]\n"
        "deltas = 0.05, 0.2, 0.1\n";
    Scenario sc = parse_scenario(text);
    REQUIRE(sc.deltas.size() == 3);
    CHECK(sc.deltas[0] == doctest::Approx(0.2));
    CHECK(sc.deltas[1] == doctest::Approx(0.1));
    CHECK(sc.deltas[2] == doctest::Approx(0.05));
}

TEST_CASE("parse errors carry line numbers") {
    // Unknown key in a known section.
    CHECK(error_of("[pipeline]\n"
                   "type = corner_positive_mass\n"
                   "[corner]\n"
                   "radius = 2.5\n")
              .find("line 4: unknown key 'radius'") != std::string::npos);
    // Unknown section.
    CHECK(error_of("[pipeline]\n"
                   "type = corner_positive_mass\n"
                   "[mystery]\n"
                   "x = 1\n")
              .find("line 3: unknown section 'mystery'") !=
          std::string::npos);
    // Entry before any section.
    CHECK(error_of("type = corner_positive_mass\n")
              .find("line 1: entry outside any [section]") !=
          std::string::npos);
    // Malformed line.
    CHECK(error_of("[pipeline]\nnonsense\n").find("line 2: expected") !=
          std::string::npos);
    // Duplicate key.
    CHECK(error_of("[pipeline]\ntype = shi_tam\ntype = shi_tam\n")
              .find("line 3: duplicate key 'type'") != std::string::npos);
    // Bad number.
    CHECK(error_of("[pipeline]\n"
                   "type = corner_positive_mass\n"
                   "[corner]\n"
                   "exterior_mass = heavy\n")
              .find("line 4: not a number: 'heavy'") != std::string::npos);
    // Bad list element.
    CHECK(error_of("[pipeline]\n"
                   "type = corner_positive_mass\n"
                   "[sweep]\n"
                   "deltas = 0.1, oops\n")
              .find("line 4: not a number: 'oops'") != std::string::npos);
    // Missing pipeline type.
    CHECK(error_of("[pipeline]\nname = x\n").find("type must be") !=
          std::string::npos);
    CHECK(error_of("").find("missing [pipeline]") != std::string::npos);
}

TEST_CASE("fill-in scenario keys, shield block and tolerance overrides") {
    const std::string text =
        "[pipeline]\n"
        "type = shi_tam\n"
        "[bartnik]\n"
        "radius = 1.0\n"
        "eta = 0.0\n"
        "lambda = 0.5\n"
        "[fill_in]\n"
        "type = truncated_cylinder\n"
        "length = 5.0\n"
        "[shield]\n"
        "u0_start = 0.0\n"
        "u1_start = 3.0\n"
        "u2_start = 4.0\n"
        "kappa = 1.0\n"
        "eta = 1.0\n"
        "[tolerances]\n"
        "mass_floor = 1e-6\n";
    Scenario sc = parse_scenario(text);
    CHECK(sc.kind == PipelineKind::ShiTam);
    CHECK(sc.shi_tam.fill_in == "truncated_cylinder");
    REQUIRE(sc.shi_tam.lambda.has_value());
    CHECK(*sc.shi_tam.lambda == doctest::Approx(0.5));
    REQUIRE(sc.shi_tam.shield.has_value());
    CHECK(sc.shi_tam.shield->u1_start == doctest::Approx(3.0));
    CHECK(sc.tolerances.mass_floor == doctest::Approx(1e-6));
    CHECK(sc.tolerances.scalar_floor == doctest::Approx(1e-8));  // untouched

    // Required keys are enforced.
    CHECK(error_of("[pipeline]\ntype = shi_tam\n[bartnik]\nradius = 1\n")
              .find("missing key 'eta'") != std::string::npos);
    CHECK(error_of("[pipeline]\ntype = shi_tam\n")
              .find("missing [bartnik] section") != std::string::npos);
}

TEST_CASE("strict tolerance profile scales thresholds down") {
    auto strict = ToleranceProfile::strict();
    auto defaults = ToleranceProfile::defaults();
    CHECK(strict.scalar_floor == doctest::Approx(defaults.scalar_floor / 10));
    CHECK(strict.mass_floor == doctest::Approx(defaults.mass_floor / 10));
    const std::string text =
        "[pipeline]\ntype = corner_positive_mass\n";
    Scenario sc = parse_scenario(text, strict);
    CHECK(sc.tolerances.mass_floor == doctest::Approx(strict.mass_floor));
}

TEST_CASE("csv serialization quotes RFC-style and keeps header-only tables") {
    Table t;
    t.name = "demo";
    t.columns = {"plain", "with,comma", "with\"quote"};
    CHECK(table_to_csv(t) == "plain,\"with,comma\",\"with\"\"quote\"\n");
    t.rows.push_back({"a", "b,c", "say \"hi\""});
    CHECK(table_to_csv(t) ==
          "plain,\"with,comma\",\"with\"\"quote\"\n"
          "a,\"b,c\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("number formatting is deterministic shortest round-trip") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-1e-10) == "-1e-10");
    CHECK(format_number(69.4651773467) == "69.4651773467");
}

TEST_CASE("report emission is deterministic and complete") {
    Report rep;
    rep.title = "demo report";
    rep.verdict = Verdict::Pass;
    rep.summary.push_back({"mass", "1.25", "demo.op"});
    Table t;
    t.name = "sweep";
    t.columns = {"delta", "value"};
    t.provenance = {"scenario", "demo.op"};
    t.rows.push_back({"0.1", "2"});
    rep.tables.push_back(t);
    rep.notes.push_back("a note");

    namespace fs = std::filesystem;
    const std::string d1 = (fs::temp_directory_path() / "mc_rep1").string();
    const std::string d2 = (fs::temp_directory_path() / "mc_rep2").string();
    auto f1 = emit_report(rep, d1);
    auto f2 = emit_report(rep, d2);
    REQUIRE(f1.size() == f2.size());
    REQUIRE(f1.size() == 4);  // summary.csv, provenance.csv, sweep.csv, txt
    for (std::size_t i = 0; i < f1.size(); ++i)
        CHECK(slurp(f1[i]) == slurp(f2[i]));

    const std::string sweep = slurp((fs::path(d1) / "sweep.csv").string());
    CHECK(sweep == "delta,value\n0.1,2\n");
    const std::string prov =
        slurp((fs::path(d1) / "provenance.csv").string());
    CHECK(prov.find("sweep,value,demo.op") != std::string::npos);
    const std::string text = slurp((fs::path(d1) / "summary.txt").string());
    CHECK(text.find("verdict: PASS") != std::string::npos);
    CHECK(text.find("a note") != std::string::npos);

    // Empty report: header-only CSVs.
    Report empty;
    empty.title = "empty";
    const std::string d3 = (fs::temp_directory_path() / "mc_rep3").string();
    emit_report(empty, d3);
    const std::string prov3 =
        slurp((fs::path(d3) / "provenance.csv").string());
    CHECK(prov3 == "table,column,operation\n");
}

TEST_CASE("fill-in pipeline end to end: rigidity, gating and mismatch") {
    // Flat ball with its own Euclidean mean curvature: everything vanishes
    // and the rigidity diagnostics appear.
    Scenario sc;
    sc.kind = PipelineKind::ShiTam;
    sc.deltas = {0.05};
    sc.shi_tam.radius = 1.0;
    sc.shi_tam.eta = 2.0;
    sc.shi_tam.fill_in = "flat_ball";
    Report rep = run_scenario(sc);
    CHECK(rep.verdict == Verdict::Pass);
    bool has_rigidity = false, has_by = false;
    for (const auto& item : rep.summary) {
        if (item.name == "rigidity_max_ricci") has_rigidity = true;
        if (item.name == "brown_york_mass") {
            has_by = true;
            CHECK(std::stod(item.value) == doctest::Approx(0.0).epsilon(1e-10));
        }
    }
    CHECK(has_rigidity);
    CHECK(has_by);
    REQUIRE(rep.tables.size() >= 1);
    CHECK(rep.tables[0].name == "sweep");
    REQUIRE(rep.tables[0].rows.size() == 1);

    // A truncated fill-in without a shield cannot be certified.
    Scenario tc = sc;
    tc.shi_tam.eta = 0.0;
    tc.shi_tam.fill_in = "truncated_cylinder";
    tc.shi_tam.fill_in_length = 5.0;
    Report rep2 = run_scenario(tc);
    CHECK(rep2.verdict == Verdict::Inconclusive);

    // With a valid shield it passes; with a narrow shield it stays
    // inconclusive.
    tc.shi_tam.shield = ShieldScenario{0.0, 3.0, 4.0, 1.0, 1.0};
    CHECK(run_scenario(tc).verdict == Verdict::Pass);
    tc.shi_tam.shield = ShieldScenario{0.0, 1.0, 2.0, 1.0, 1.0};
    CHECK(run_scenario(tc).verdict == Verdict::Inconclusive);

    // Boundary mean-curvature mismatch is an error, not a verdict.
    Scenario bad = sc;
    bad.shi_tam.eta = 1.9;
    CHECK_THROWS_AS(run_scenario(bad), Error);
}

TEST_CASE("corner pipeline concurrency gives identical tables") {
    Scenario sc;
    sc.kind = PipelineKind::CornerPositiveMass;
    sc.deltas = {0.1, 0.05};
    sc.corner.exterior = "flat";
    Report serial = run_scenario(sc, 1);
    Report parallel = run_scenario(sc, 4);
    REQUIRE(serial.tables.size() == parallel.tables.size());
    CHECK(serial.tables[0].rows == parallel.tables[0].rows);
    CHECK(serial.verdict == parallel.verdict);
}

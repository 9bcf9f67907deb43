#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "masscheck/shield.hpp"

namespace masscheck {

/// Numerical thresholds used by the pipelines. `strict` divides every
/// threshold by 10. Scenario files may override individual values in a
/// [tolerances] section.
struct ToleranceProfile {
    double scalar_floor = 1e-8;   // allowed negativity of corrected curvature
    double mass_floor = 1e-8;     // allowed negativity of the final mass
    double rigidity_tol = 1e-6;   // |mass| below which rigidity checks run
    double match_tol = 1e-8;      // boundary data matching in the gluing
    static ToleranceProfile defaults() { return {}; }
    static ToleranceProfile strict() {
        return {1e-9, 1e-9, 1e-7, 1e-9};
    }
};

enum class PipelineKind { CornerPositiveMass, ShiTam };

/// Corner scenario: a flat interior ball glued at `interface_radius` to a
/// rotationally symmetric exterior (Schwarzschild of `exterior_mass`, or
/// flat), smoothed across the sweep widths and conformally corrected.
struct CornerScenario {
    int dimension = 3;
    double inner_radius = 1.0;
    double interface_radius = 2.5;
    std::string exterior = "schwarzschild";  // or "flat"
    double exterior_mass = 1.0;
    double outer_radius = 1.0e6;
    std::size_t interior_samples = 301;
    std::size_t exterior_samples = 400;
};

/// Optional shield declaration for truncated fill-ins. Interval starts are
/// arclengths on the fill-in profile; all regions extend to its outer end.
struct ShieldScenario {
    double u0_start, u1_start, u2_start;
    double kappa, eta;
};

/// Boundary-data scenario: round sphere of the given radius with constant
/// mean curvature `eta`, a fill-in realizing that data, and the scalar-flat
/// exterior extension glued on.
struct ShiTamScenario {
    int dimension = 3;
    double radius = 1.0;
    double eta = 2.0;
    std::optional<double> lambda;  // optional mean-curvature threshold
    std::string fill_in = "flat_ball";  // flat_ball | half_cylinder |
                                        // truncated_cylinder
    double fill_in_length = 4.0;        // cylinder arclength (ignored by ball)
    std::size_t fill_in_samples = 401;
    double extension_radius = 0.0;      // 0 selects the default
    std::size_t extension_samples = 6000;
    std::optional<ShieldScenario> shield;
};

struct Scenario {
    PipelineKind kind = PipelineKind::CornerPositiveMass;
    std::string name = "scenario";
    std::vector<double> deltas = {0.2, 0.1, 0.05, 0.025};
    CornerScenario corner;
    ShiTamScenario shi_tam;
    ToleranceProfile tolerances;  // after profile + per-file overrides
};

/// Parses the sectioned key = value format:
///
///   file    = { blank | comment | section } ;
///   section = "[" name "]" EOL { blank | comment | entry } ;
///   entry   = key "=" value EOL ;
///   comment = "#" text EOL ;
///
/// Unknown sections or keys, duplicate keys, malformed lines, and entries
/// outside any section are all errors carrying the 1-based line number.
Scenario parse_scenario(const std::string& text,
                        const ToleranceProfile& base = {});

/// Reads and parses a scenario file; parse errors are prefixed with `path`.
Scenario load_scenario(const std::string& path,
                       const ToleranceProfile& base = {});

}  // namespace masscheck

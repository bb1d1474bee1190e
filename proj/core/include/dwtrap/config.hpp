#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwtrap/dynamics.hpp"
#include "dwtrap/experiments.hpp"
#include "dwtrap/geometry.hpp"

namespace dwtrap {

// Plain-text run configuration, INI-style sections of key = value lines.
// Unknown sections or keys are hard errors so typos cannot silently fall
// back to defaults. Exactly one of {chi, trap.u, trap.x0} may set the
// tunneling strength.
//
// All values below are already resolved: defaults materialized, the angular
// frequency convention applied (omega0 and g stored in s^-1), masses in kg.
struct RunConfig {
    // [run]
    std::string kind = "fig1";          // fig1|fig2|fig3|red_sideband_well1|
                                        // carrier_well1|red_sideband_both|extended_ld
    std::optional<double> chi;          // direct tunneling/drive ratio
    int levels = 2;                     // levels per well (extended runs)

    // [species]
    std::string species = "ca40";
    double mass_kg = 0.0;               // resolved, > 0

    // [trap]
    double omega0 = 2e6;                // s^-1, resolved convention
    std::optional<double> u;            // separation parameter
    std::optional<double> x0;           // m, alternative to u

    // [laser]
    double eta = 0.1;
    double g = 2e5;                     // s^-1, resolved convention
    double phi_l = -1.5707963267948966;

    // [grid]
    std::optional<double> t_start, t_end;
    std::optional<int> num_points;

    // [flags]
    std::string angular_frequency_convention = "plain";   // plain | two_pi
    bool use_quadrature_rates = false;
    bool ld_scalar_factor = false;
    std::string closed_form_variant = "corrected";        // corrected | printed
    std::string subtraction_scheme = "well1";             // well1 | symmetrized

    // [sweep]
    std::vector<double> sweep_chis;

    // [output]
    std::string directory = "out";
    std::string basename = "run";

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical form: emitting and re-parsing reproduces the same RunConfig.
std::string echo_config(const RunConfig& cfg);

// A run with everything derived: geometry (when u or x0 given), scaled
// regime parameters, effective chi, grid, regime report.
struct ResolvedRun {
    RunConfig config;
    Regime regime = Regime::red_sideband_well1;
    std::optional<FigureId> figure;
    std::optional<TrapGeometry> geometry;
    std::optional<RegimeReport> report;
    RegimeParams params;                // scaled units (w or g normalized to 1)
    double chi = 0.0;                   // effective tunneling/drive ratio
    TimeGrid grid;
};

ResolvedRun resolve(const RunConfig& cfg);

// Output directory: the DWTRAP_OUT environment variable overrides the
// configured directory when set.
std::string resolve_output_dir(const RunConfig& cfg);

}  // namespace dwtrap

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwtrap/dynamics.hpp"
#include "dwtrap/geometry.hpp"

namespace dwtrap {

// Fluorescence signal of the sideband experiment on well 1: the population
// of |first excited, well 1> |down>.
std::vector<double> p_down_well1(const Trajectory& traj);
std::vector<double> p_down_well1(const std::vector<CoefficientSet>& cs);

// Same basis state for the carrier experiment (initial state is the excited
// level of well 1 with spin up).
std::vector<double> p_down_carrier(const Trajectory& traj);

// Both-wells detection: the coherent reading |c12 + c22|^2 assumes the two
// wells are not resolved, the incoherent reading |c12|^2 + |c22|^2 is the
// Born-rule sum. For this dynamics the cross term vanishes identically, so
// the two agree; both are still emitted.
struct BothWellsPdown {
    std::vector<double> coherent;
    std::vector<double> incoherent;
};
BothWellsPdown p_down_both(const std::vector<CoefficientSet>& cs);
BothWellsPdown p_down_both(const Trajectory& traj);

// Expectation of the electronic spin-down projector, any trajectory.
std::vector<double> p_down_projector(const Trajectory& traj);

// |<a|b>|^2 with matching bases.
double fidelity(const StateVector& a, const StateVector& b);

// Peak-based oscillation analysis: local maxima refined by the quadratic
// through the three surrounding samples. For a sin^2-shaped probability the
// peak spacing is pi / Omega, hence frequency = pi / mean_spacing.
struct PeakAnalysis {
    std::vector<double> positions;   // refined peak locations, grid units
    std::vector<double> values;      // refined peak heights
    double mean_spacing = 0.0;
    double frequency = 0.0;          // pi / mean_spacing, 0 if < 2 peaks
    double max_value = 0.0;          // best refined height (max sample if no peak)
};
PeakAnalysis analyze_peaks(const std::vector<double>& series, const TimeGrid& grid);

// Stock figures:
//   fig1  sideband on well 1, P_down vs w t, chi in {0, 1}
//   fig2  carrier on well 1, P_down vs g t, chi_c in {0, 1}
//   fig3  sideband on both wells, P_down vs w t, chi in {0, 1}
enum class FigureId { fig1, fig2, fig3 };

const char* figure_name(FigureId id);
TimeGrid default_grid(FigureId id);
StateVector initial_state(FigureId id, const Basis& basis);

struct FigureSpec {
    FigureId id;
    std::vector<double> chis;
    std::optional<TimeGrid> grid;    // default_grid(id) when absent
};

struct LabeledSeries {
    std::string name;
    std::string unit;
    std::string method;
    std::vector<double> values;
};

struct FigureSeries {
    double chi = 0.0;
    TimeGrid grid;
    std::vector<LabeledSeries> columns;   // first column is the time axis
    double closed_vs_oracle = 0.0;        // max abs deviation between methods
};

std::vector<FigureSeries> reproduce_figure(const FigureSpec& spec);

// chi sweep at fixed regime: one summary row per chi.
struct SweepRow {
    double chi = 0.0;
    double frequency = 0.0;        // peak-based estimate, units of the scale
    double amplitude = 0.0;        // refined maximum of P_down
    double closed_vs_oracle = 0.0;
    std::string flags = "-";       // regime flags when geometry is known
};

std::vector<SweepRow> sweep_chi(Regime regime, const std::vector<double>& chis,
                                const TimeGrid& grid);

}  // namespace dwtrap

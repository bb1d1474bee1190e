#include "dwtrap/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "dwtrap/errors.hpp"
#include "dwtrap/hamiltonians.hpp"

namespace dwtrap {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_ansatz_basis(const Basis& b) {
    if (!b.has_electronic() || b.levels_per_well() < 2)
        throw domain_error("trajectory basis lacks the excited-level spin states");
}

std::vector<double> population_series(const Trajectory& traj, int index) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& st : traj.states) out.push_back(std::norm(st(index)));
    return out;
}

}  // namespace

std::vector<double> p_down_well1(const Trajectory& traj) {
    require_ansatz_basis(traj.basis);
    return population_series(traj, traj.basis.index(1, 2, Spin::down));
}

std::vector<double> p_down_well1(const std::vector<CoefficientSet>& cs) {
    std::vector<double> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(std::norm(c.c12));
    return out;
}

std::vector<double> p_down_carrier(const Trajectory& traj) {
    // the detection addresses well 1, so only the local |down> amplitude
    // counts; the population that tunneled to well 2 is invisible to it
    return p_down_well1(traj);
}

BothWellsPdown p_down_both(const std::vector<CoefficientSet>& cs) {
    BothWellsPdown out;
    out.coherent.reserve(cs.size());
    out.incoherent.reserve(cs.size());
    for (const auto& c : cs) {
        out.coherent.push_back(std::norm(c.c12 + c.c22));
        out.incoherent.push_back(std::norm(c.c12) + std::norm(c.c22));
    }
    return out;
}

BothWellsPdown p_down_both(const Trajectory& traj) {
    require_ansatz_basis(traj.basis);
    const int i1 = traj.basis.index(1, 2, Spin::down);
    const int i2 = traj.basis.index(2, 2, Spin::down);
    BothWellsPdown out;
    out.coherent.reserve(traj.states.size());
    out.incoherent.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        out.coherent.push_back(std::norm(st(i1) + st(i2)));
        out.incoherent.push_back(std::norm(st(i1)) + std::norm(st(i2)));
    }
    return out;
}

std::vector<double> p_down_projector(const Trajectory& traj) {
    const Basis& b = traj.basis;
    if (!b.has_electronic())
        throw domain_error("spin projector needs an electronic basis");
    std::vector<int> down_indices;
    for (int w = 1; w <= 2; ++w)
        for (int l = 1; l <= b.levels_per_well(); ++l)
            down_indices.push_back(b.index(w, l, Spin::down));
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        double p = 0.0;
        for (int i : down_indices) p += std::norm(st(i));
        out.push_back(p);
    }
    return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (!(a.basis == b.basis)) throw domain_error("fidelity needs matching bases");
    return std::norm(a.amps.dot(b.amps));
}

PeakAnalysis analyze_peaks(const std::vector<double>& series, const TimeGrid& grid) {
    validate_grid(grid);
    if (static_cast<int>(series.size()) != grid.num_points)
        throw domain_error("series length does not match the grid");

    const std::vector<double> t = grid.times();
    const double h = grid.step();
    PeakAnalysis out;
    out.max_value = *std::max_element(series.begin(), series.end());

    for (size_t i = 1; i + 1 < series.size(); ++i) {
        if (!(series[i] > series[i - 1] && series[i] > series[i + 1])) continue;
        // quadratic through the three samples around the maximum
        const double denom = series[i - 1] - 2.0 * series[i] + series[i + 1];
        double delta = 0.0;
        if (std::abs(denom) > 1e-300)
            delta = 0.5 * (series[i - 1] - series[i + 1]) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        const double value = series[i] - 0.25 * (series[i - 1] - series[i + 1]) * delta;
        out.positions.push_back(t[i] + delta * h);
        out.values.push_back(value);
        out.max_value = std::max(out.max_value, value);
    }

    if (out.positions.size() >= 2) {
        double sum = 0.0;
        for (size_t k = 1; k < out.positions.size(); ++k)
            sum += out.positions[k] - out.positions[k - 1];
        out.mean_spacing = sum / (out.positions.size() - 1);
        out.frequency = kPi / out.mean_spacing;
    }
    return out;
}

const char* figure_name(FigureId id) {
    switch (id) {
        case FigureId::fig1: return "fig1";
        case FigureId::fig2: return "fig2";
        case FigureId::fig3: return "fig3";
    }
    throw domain_error("unknown figure id");
}

TimeGrid default_grid(FigureId id) {
    switch (id) {
        case FigureId::fig1:
        case FigureId::fig3:
            return {0.0, 6.0 * kPi, 2001, TimeScale::sideband_w};
        case FigureId::fig2:
            return {0.0, 12.0 * kPi, 4001, TimeScale::carrier_g};
    }
    throw domain_error("unknown figure id");
}

StateVector initial_state(FigureId id, const Basis& basis) {
    require_ansatz_basis(basis);
    switch (id) {
        case FigureId::fig1:
        case FigureId::fig3:
            return basis_ket(basis, 1, 1, Spin::up);
        case FigureId::fig2:
            return basis_ket(basis, 1, 2, Spin::up);
    }
    throw domain_error("unknown figure id");
}

namespace {

const char* time_unit(TimeScale scale) {
    return scale == TimeScale::sideband_w ? "w*t" : "g*t";
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double dev = 0.0;
    for (size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

struct RegimeRun {
    std::vector<double> p_expm;
    std::vector<double> p_closed;
    std::vector<double> p_extra;   // incoherent reading, both-wells only
};

RegimeRun run_regime(Regime regime, double chi, const TimeGrid& grid,
                     const StateVector& psi0, const Basis& basis) {
    RegimeRun run;
    switch (regime) {
        case Regime::red_sideband_well1: {
            RegimeParams p = scaled_sideband_params(chi);
            Trajectory traj = propagate_expm(build_red_sideband_well1(basis, p), psi0, grid);
            run.p_expm = p_down_well1(traj);
            run.p_closed = p_down_well1(closed_form_red_sideband(chi, grid));
            break;
        }
        case Regime::carrier_well1: {
            RegimeParams p = scaled_carrier_params(chi);
            Trajectory traj = propagate_expm(build_carrier_well1(basis, p), psi0, grid);
            run.p_expm = p_down_carrier(traj);
            run.p_closed = closed_form_carrier(chi, grid);
            break;
        }
        case Regime::red_sideband_both: {
            RegimeParams p = scaled_sideband_params(chi);
            Trajectory traj = propagate_expm(build_red_sideband_both(basis, p), psi0, grid);
            BothWellsPdown both = p_down_both(traj);
            run.p_expm = std::move(both.coherent);
            run.p_extra = std::move(both.incoherent);
            run.p_closed = p_down_both(closed_form_both_wells(chi, grid)).coherent;
            break;
        }
        default:
            throw domain_error("regime has no stock experiment");
    }
    return run;
}

Regime figure_regime(FigureId id) {
    switch (id) {
        case FigureId::fig1: return Regime::red_sideband_well1;
        case FigureId::fig2: return Regime::carrier_well1;
        case FigureId::fig3: return Regime::red_sideband_both;
    }
    throw domain_error("unknown figure id");
}

}  // namespace

std::vector<FigureSeries> reproduce_figure(const FigureSpec& spec) {
    const TimeGrid grid = spec.grid.value_or(default_grid(spec.id));
    validate_grid(grid);
    if (spec.chis.empty()) throw domain_error("figure needs at least one chi");

    const Basis basis(2, true);
    const StateVector psi0 = initial_state(spec.id, basis);
    const Regime regime = figure_regime(spec.id);

    std::vector<FigureSeries> out;
    out.reserve(spec.chis.size());
    for (double chi : spec.chis) {
        if (!(chi >= 0.0)) throw domain_error("chi must be >= 0");
        RegimeRun run = run_regime(regime, chi, grid, psi0, basis);

        FigureSeries series;
        series.chi = chi;
        series.grid = grid;
        series.closed_vs_oracle = max_abs_diff(run.p_expm, run.p_closed);
        series.columns.push_back({"t", time_unit(grid.scale), "grid", grid.times()});
        const char* pname =
            spec.id == FigureId::fig3 ? "p_down_both" : "p_down_well1";
        series.columns.push_back({pname, "probability", "expm", std::move(run.p_expm)});
        series.columns.push_back(
            {pname, "probability", "closed_form", std::move(run.p_closed)});
        if (!run.p_extra.empty())
            series.columns.push_back({"p_down_both_incoherent", "probability", "expm",
                                      std::move(run.p_extra)});
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<SweepRow> sweep_chi(Regime regime, const std::vector<double>& chis,
                                const TimeGrid& grid) {
    validate_grid(grid);
    if (chis.empty()) throw domain_error("sweep needs at least one chi");

    const Basis basis(2, true);
    FigureId id;
    switch (regime) {
        case Regime::red_sideband_well1: id = FigureId::fig1; break;
        case Regime::carrier_well1: id = FigureId::fig2; break;
        case Regime::red_sideband_both: id = FigureId::fig3; break;
        default: throw domain_error("regime has no stock experiment");
    }
    const StateVector psi0 = initial_state(id, basis);

    std::vector<SweepRow> rows;
    rows.reserve(chis.size());
    for (double chi : chis) {
        if (!(chi >= 0.0)) throw domain_error("chi must be >= 0");
        RegimeRun run = run_regime(regime, chi, grid, psi0, basis);
        PeakAnalysis peaks = analyze_peaks(run.p_expm, grid);
        SweepRow row;
        row.chi = chi;
        row.frequency = peaks.frequency;
        row.amplitude = peaks.max_value;
        row.closed_vs_oracle = max_abs_diff(run.p_expm, run.p_closed);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace dwtrap

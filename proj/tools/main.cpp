// Command-line front end: geometry tables, single simulations, the stock
// figures, chi sweeps, and config validation. Exit codes: 0 success,
// 2 configuration or input error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dwtrap/config.hpp"
#include "dwtrap/constants.hpp"
#include "dwtrap/csv_io.hpp"
#include "dwtrap/dynamics.hpp"
#include "dwtrap/errors.hpp"
#include "dwtrap/experiments.hpp"
#include "dwtrap/geometry.hpp"
#include "dwtrap/hamiltonians.hpp"
#include "dwtrap/local_modes.hpp"
#include "dwtrap/version.hpp"

namespace {

using namespace dwtrap;

void print_kv(const std::string& key, const std::string& value) {
    std::cout << key << " = " << value << "\n";
}

void print_kv(const std::string& key, double value) {
    print_kv(key, format_double(value));
}

struct GeometryArgs {
    std::string species = "ca40";
    double omega0 = 2e6;
    std::optional<double> u;
    std::optional<double> x0;
    double eta = 0.1;
    double g = 2e5;
    bool quadrature = false;
};

int run_geometry(const GeometryArgs& args) {
    if (args.u.has_value() == args.x0.has_value())
        throw config_error("geometry needs exactly one of --u or --x0");
    const IonSpecies species = ion_species(args.species);
    const TrapGeometry geo = args.u ? derive_geometry(species, args.omega0, *args.u)
                                    : geometry_from_x0(species, args.omega0, *args.x0);
    const TunnelingRates rates = closed_form_rates(geo);
    const RegimeReport report = regime_report(geo, args.eta, args.g);

    print_kv("species", species.name);
    print_kv("mass_kg", species.mass_kg);
    print_kv("omega0", geo.omega0);
    print_kv("u", geo.u);
    print_kv("x0_m", geo.x0);
    print_kv("well_separation_m", 2.0 * geo.x0);
    print_kv("delta_x_m", geo.delta_x);
    print_kv("quartic_b", geo.b);
    print_kv("quadratic_d", geo.d);
    print_kv("barrier_J", geo.barrier);
    print_kv("omega1", rates.omega1);
    print_kv("omega2", rates.omega2);
    print_kv("r1_J", rates.r1);
    print_kv("r2_J", rates.r2);
    if (args.quadrature) {
        const QuadratureSpec spec = default_quadrature(geo);
        print_kv("r1_quadrature_J",
                 coupling_element(1, geo, spec, SubtractionScheme::well1_parabola));
        print_kv("r2_quadrature_J",
                 coupling_element(2, geo, spec, SubtractionScheme::well1_parabola));
    }
    print_kv("epsilon", report.epsilon);
    print_kv("eta", report.eta);
    print_kv("rate_ratio", report.rate_ratio);
    print_kv("energy_ratio", report.energy_ratio);
    print_kv("chi", report.chi);
    print_kv("chi_carrier", report.chi_carrier);
    print_kv("regime_flags", report.flags());
    print_kv("regime_ok", report.all_ok ? "true" : "false");
    return 0;
}

FormVariant config_variant(const RunConfig& cfg) {
    return cfg.closed_form_variant == "printed" ? FormVariant::printed
                                                : FormVariant::corrected;
}

// One propagated run for any regime, with the closed-form reading alongside
// whenever the two-level ansatz provides one.
FigureSeries simulate_resolved(const ResolvedRun& run) {
    const RunConfig& cfg = run.config;
    const bool extended = run.regime == Regime::extended_ld;
    const Basis basis(extended ? cfg.levels : 2, true);
    const FormVariant variant = config_variant(cfg);

    Hamiltonian h = [&]() {
        switch (run.regime) {
            case Regime::red_sideband_well1:
                return build_red_sideband_well1(basis, run.params);
            case Regime::carrier_well1:
                return build_carrier_well1(basis, run.params);
            case Regime::red_sideband_both:
                return build_red_sideband_both(basis, run.params);
            case Regime::extended_ld:
                return build_extended_ld(basis, run.params);
            default:
                throw config_error("kind cannot be simulated directly");
        }
    }();

    const FigureId shape = run.figure.value_or(
        run.regime == Regime::carrier_well1 ? FigureId::fig2 : FigureId::fig1);
    const StateVector psi0 = initial_state(shape, basis);
    const Trajectory traj = propagate_expm(h, psi0, run.grid);

    FigureSeries series;
    series.chi = run.chi;
    series.grid = run.grid;
    series.columns.push_back({"t",
                              run.grid.scale == TimeScale::sideband_w ? "w*t" : "g*t",
                              "grid", run.grid.times()});

    std::vector<double> p_expm, p_closed;
    const char* pname = "p_down_well1";
    switch (run.regime) {
        case Regime::carrier_well1:
            p_expm = p_down_carrier(traj);
            p_closed = closed_form_carrier(run.chi, run.grid);
            break;
        case Regime::red_sideband_both: {
            BothWellsPdown both = p_down_both(traj);
            p_expm = both.coherent;
            p_closed = p_down_both(closed_form_both_wells(run.chi, run.grid, variant))
                           .coherent;
            pname = "p_down_both";
            series.columns.push_back({"p_down_both_incoherent", "probability", "expm",
                                      std::move(both.incoherent)});
            break;
        }
        default:
            p_expm = p_down_well1(traj);
            p_closed =
                p_down_well1(closed_form_red_sideband(run.chi, run.grid, variant));
            break;
    }

    double dev = 0.0;
    for (size_t i = 0; i < p_expm.size(); ++i)
        dev = std::max(dev, std::abs(p_expm[i] - p_closed[i]));
    series.closed_vs_oracle = dev;
    series.columns.push_back({pname, "probability", "expm", std::move(p_expm)});
    series.columns.push_back({pname, "probability", "closed_form", std::move(p_closed)});
    return series;
}

int run_simulate(const std::string& config_path, const std::string& out_flag) {
    const RunConfig cfg = parse_config_file(config_path);
    const ResolvedRun run = resolve(cfg);
    const std::string out_dir = out_flag.empty() ? resolve_output_dir(cfg) : out_flag;
    const EmittedFiles files = emit_run(run, simulate_resolved(run), out_dir);
    for (const auto& p : files.paths) std::cout << p << "\n";
    return 0;
}

int run_figure(const std::string& config_path, const std::string& id_flag,
               const std::vector<double>& chi_flags, const std::string& out_flag) {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (!id_flag.empty()) {
        if (id_flag != "fig1" && id_flag != "fig2" && id_flag != "fig3")
            throw config_error("unknown figure id: " + id_flag);
        cfg.kind = id_flag;
    }
    const ResolvedRun run = resolve(cfg);
    if (!run.figure)
        throw config_error("kind '" + cfg.kind + "' is not one of the stock figures");

    FigureSpec spec;
    spec.id = *run.figure;
    spec.grid = run.grid;
    if (!chi_flags.empty())
        spec.chis = chi_flags;
    else if (cfg.chi)
        spec.chis = {*cfg.chi};
    else
        spec.chis = {0.0, 1.0};

    const std::string out_dir = out_flag.empty() ? resolve_output_dir(cfg) : out_flag;
    const EmittedFiles files = emit_figure(run, reproduce_figure(spec), out_dir);
    for (const auto& p : files.paths) std::cout << p << "\n";
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_flag) {
    const RunConfig cfg = parse_config_file(config_path);
    if (cfg.sweep_chis.empty())
        throw config_error("sweep needs a non-empty [sweep] chis list");
    const ResolvedRun run = resolve(cfg);
    std::vector<SweepRow> rows = sweep_chi(run.regime, cfg.sweep_chis, run.grid);
    if (run.report)
        for (auto& row : rows) row.flags = run.report->flags();
    const std::string out_dir = out_flag.empty() ? resolve_output_dir(cfg) : out_flag;
    const EmittedFiles files = emit_sweep(run, rows, out_dir);
    for (const auto& p : files.paths) std::cout << p << "\n";
    return 0;
}

int run_validate(const std::string& config_path) {
    const RunConfig cfg = parse_config_file(config_path);
    const ResolvedRun run = resolve(cfg);
    std::cout << echo_config(cfg);
    std::cout << "# resolved: regime = " << regime_name(run.regime)
              << ", chi = " << format_double(run.chi) << ", grid = ["
              << format_double(run.grid.t_start) << ", "
              << format_double(run.grid.t_end) << "] x " << run.grid.num_points
              << "\n";
    std::cout << "config ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-well trapped-ion tunneling toolkit"};
    app.set_version_flag("--version", dwtrap::version);
    app.require_subcommand(1);

    GeometryArgs geo_args;
    double u_val = 0.0, x0_val = 0.0;
    auto* geo = app.add_subcommand("geometry",
                                   "derive trap geometry, tunneling rates and regime checks");
    geo->add_option("--species", geo_args.species, "ion species name")
        ->capture_default_str();
    geo->add_option("--omega0", geo_args.omega0, "local trap frequency, s^-1")
        ->capture_default_str();
    auto* u_opt = geo->add_option("--u", u_val, "separation parameter x0^2/dx^2");
    auto* x0_opt = geo->add_option("--x0", x0_val, "half separation of the minima, m");
    geo->add_option("--eta", geo_args.eta, "Lamb-Dicke parameter")->capture_default_str();
    geo->add_option("--g", geo_args.g, "Rabi frequency, s^-1")->capture_default_str();
    geo->add_flag("--quadrature", geo_args.quadrature,
                  "also evaluate the coupling integrals numerically");

    std::string sim_config, sim_out;
    auto* sim = app.add_subcommand("simulate", "propagate one configured run");
    sim->add_option("--config", sim_config, "run configuration file")->required();
    sim->add_option("--out", sim_out, "output directory override");

    std::string fig_config, fig_id, fig_out;
    std::vector<double> fig_chis;
    auto* fig = app.add_subcommand("figure", "reproduce a stock figure");
    fig->add_option("--id", fig_id, "fig1 | fig2 | fig3");
    fig->add_option("--config", fig_config, "run configuration file");
    fig->add_option("--chi", fig_chis, "tunneling/drive ratio, repeatable");
    fig->add_option("--out", fig_out, "output directory override");

    std::string sweep_config, sweep_out;
    auto* swp = app.add_subcommand("sweep", "summarize runs over the configured chi list");
    swp->add_option("--config", sweep_config, "run configuration file")->required();
    swp->add_option("--out", sweep_out, "output directory override");

    std::string val_config;
    auto* val = app.add_subcommand("validate", "parse and resolve a config, echo it back");
    val->add_option("--config", val_config, "run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (geo->parsed()) {
            if (u_opt->count()) geo_args.u = u_val;
            if (x0_opt->count()) geo_args.x0 = x0_val;
            return run_geometry(geo_args);
        }
        if (sim->parsed()) return run_simulate(sim_config, sim_out);
        if (fig->parsed()) return run_figure(fig_config, fig_id, fig_chis, fig_out);
        if (swp->parsed()) return run_sweep(sweep_config, sweep_out);
        if (val->parsed()) return run_validate(val_config);
    } catch (const dwtrap::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const dwtrap::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dwtrap::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

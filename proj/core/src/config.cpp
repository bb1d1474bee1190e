#include "dwtrap/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "dwtrap/constants.hpp"
#include "dwtrap/csv_io.hpp"
#include "dwtrap/errors.hpp"
#include "dwtrap/hamiltonians.hpp"
#include "dwtrap/local_modes.hpp"

namespace dwtrap {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("value for '" + key + "' is not a number: " + value);
    }
    if (used != value.size() || !std::isfinite(v))
        throw config_error("value for '" + key + "' is not a finite number: " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(value, &used);
    } catch (const std::exception&) {
        throw config_error("value for '" + key + "' is not an integer: " + value);
    }
    if (used != value.size())
        throw config_error("value for '" + key + "' is not an integer: " + value);
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw config_error("value for '" + key + "' is not a boolean: " + value);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::string cleaned = value;
    for (char& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream in(cleaned);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_double(key, tok));
    if (out.empty()) throw config_error("value for '" + key + "' is an empty list");
    return out;
}

const std::set<std::string> kKinds = {
    "fig1", "fig2", "fig3", "red_sideband_well1", "carrier_well1",
    "red_sideband_both", "extended_ld"};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::string section = "run";
    std::set<std::string> seen;
    std::optional<double> mass_amu, mass_kg;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) +
                                   ": malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> sections = {
                "run", "species", "trap", "laser", "grid", "flags", "sweep", "output"};
            if (!sections.count(section))
                throw config_error("unknown section [" + section + "]");
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(lineno) +
                               ": expected 'key = value': " + line);
        if (!seen.insert(qual).second)
            throw config_error("duplicate key '" + qual + "'");

        if (qual == "run.kind") {
            if (!kKinds.count(value)) throw config_error("unknown run kind: " + value);
            cfg.kind = value;
        } else if (qual == "run.chi") {
            cfg.chi = parse_double(qual, value);
        } else if (qual == "run.levels") {
            cfg.levels = parse_int(qual, value);
        } else if (qual == "species.name") {
            cfg.species = value;
        } else if (qual == "species.mass_amu") {
            mass_amu = parse_double(qual, value);
        } else if (qual == "species.mass_kg") {
            mass_kg = parse_double(qual, value);
        } else if (qual == "trap.omega0") {
            cfg.omega0 = parse_double(qual, value);
        } else if (qual == "trap.u") {
            cfg.u = parse_double(qual, value);
        } else if (qual == "trap.x0") {
            cfg.x0 = parse_double(qual, value);
        } else if (qual == "laser.eta") {
            cfg.eta = parse_double(qual, value);
        } else if (qual == "laser.g") {
            cfg.g = parse_double(qual, value);
        } else if (qual == "laser.phi_l") {
            cfg.phi_l = parse_double(qual, value);
        } else if (qual == "grid.t_start") {
            cfg.t_start = parse_double(qual, value);
        } else if (qual == "grid.t_end") {
            cfg.t_end = parse_double(qual, value);
        } else if (qual == "grid.num_points") {
            cfg.num_points = parse_int(qual, value);
        } else if (qual == "flags.angular_frequency_convention") {
            if (value != "plain" && value != "two_pi")
                throw config_error("angular_frequency_convention must be plain or two_pi");
            cfg.angular_frequency_convention = value;
        } else if (qual == "flags.use_quadrature_rates") {
            cfg.use_quadrature_rates = parse_bool(qual, value);
        } else if (qual == "flags.ld_scalar_factor") {
            cfg.ld_scalar_factor = parse_bool(qual, value);
        } else if (qual == "flags.closed_form_variant") {
            if (value != "corrected" && value != "printed")
                throw config_error("closed_form_variant must be corrected or printed");
            cfg.closed_form_variant = value;
        } else if (qual == "flags.subtraction_scheme") {
            if (value != "well1" && value != "symmetrized")
                throw config_error("subtraction_scheme must be well1 or symmetrized");
            cfg.subtraction_scheme = value;
        } else if (qual == "sweep.chis") {
            cfg.sweep_chis = parse_double_list(qual, value);
        } else if (qual == "output.directory") {
            cfg.directory = value;
        } else if (qual == "output.basename") {
            cfg.basename = value;
        } else {
            throw config_error("unknown key '" + qual + "'");
        }
    }

    if (mass_amu && mass_kg)
        throw config_error("species.mass_amu and species.mass_kg are mutually exclusive");
    if (mass_kg) {
        cfg.mass_kg = *mass_kg;
    } else if (mass_amu) {
        cfg.mass_kg = *mass_amu * constants::amu;
    } else {
        try {
            cfg.mass_kg = ion_species(cfg.species).mass_kg;
        } catch (const domain_error& e) {
            throw config_error(std::string("species.name: ") + e.what());
        }
    }
    if (!(cfg.mass_kg > 0.0)) throw config_error("ion mass must be positive");

    // the two_pi convention means frequencies were given in cycles per
    // second; fold the factor in once so everything downstream is plain s^-1
    if (cfg.angular_frequency_convention == "two_pi") {
        cfg.omega0 *= kTwoPi;
        cfg.g *= kTwoPi;
        cfg.angular_frequency_convention = "plain";
    }

    if (cfg.levels < 1 || cfg.levels > Basis::max_levels)
        throw config_error("run.levels must lie in [1, " +
                           std::to_string(Basis::max_levels) + "]");
    if (cfg.num_points && *cfg.num_points < 2)
        throw config_error("grid.num_points must be at least 2");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string echo_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[run]\n";
    out << "kind = " << cfg.kind << "\n";
    if (cfg.chi) out << "chi = " << format_double(*cfg.chi) << "\n";
    out << "levels = " << cfg.levels << "\n";

    out << "\n[species]\n";
    out << "name = " << cfg.species << "\n";
    bool registry_mass = false;
    try {
        registry_mass = ion_species(cfg.species).mass_kg == cfg.mass_kg;
    } catch (const domain_error&) {
    }
    if (!registry_mass) out << "mass_kg = " << format_double(cfg.mass_kg) << "\n";

    out << "\n[trap]\n";
    out << "omega0 = " << format_double(cfg.omega0) << "\n";
    if (cfg.u) out << "u = " << format_double(*cfg.u) << "\n";
    if (cfg.x0) out << "x0 = " << format_double(*cfg.x0) << "\n";

    out << "\n[laser]\n";
    out << "eta = " << format_double(cfg.eta) << "\n";
    out << "g = " << format_double(cfg.g) << "\n";
    out << "phi_l = " << format_double(cfg.phi_l) << "\n";

    if (cfg.t_start || cfg.t_end || cfg.num_points) {
        out << "\n[grid]\n";
        if (cfg.t_start) out << "t_start = " << format_double(*cfg.t_start) << "\n";
        if (cfg.t_end) out << "t_end = " << format_double(*cfg.t_end) << "\n";
        if (cfg.num_points) out << "num_points = " << *cfg.num_points << "\n";
    }

    out << "\n[flags]\n";
    out << "angular_frequency_convention = " << cfg.angular_frequency_convention << "\n";
    out << "use_quadrature_rates = " << (cfg.use_quadrature_rates ? "true" : "false")
        << "\n";
    out << "ld_scalar_factor = " << (cfg.ld_scalar_factor ? "true" : "false") << "\n";
    out << "closed_form_variant = " << cfg.closed_form_variant << "\n";
    out << "subtraction_scheme = " << cfg.subtraction_scheme << "\n";

    if (!cfg.sweep_chis.empty()) {
        out << "\n[sweep]\n";
        out << "chis =";
        for (double c : cfg.sweep_chis) out << " " << format_double(c);
        out << "\n";
    }

    out << "\n[output]\n";
    out << "directory = " << cfg.directory << "\n";
    out << "basename = " << cfg.basename << "\n";
    return out.str();
}

namespace {

Regime kind_regime(const std::string& kind, std::optional<FigureId>& figure) {
    if (kind == "fig1") {
        figure = FigureId::fig1;
        return Regime::red_sideband_well1;
    }
    if (kind == "fig2") {
        figure = FigureId::fig2;
        return Regime::carrier_well1;
    }
    if (kind == "fig3") {
        figure = FigureId::fig3;
        return Regime::red_sideband_both;
    }
    figure = std::nullopt;
    if (kind == "red_sideband_well1") return Regime::red_sideband_well1;
    if (kind == "carrier_well1") return Regime::carrier_well1;
    if (kind == "red_sideband_both") return Regime::red_sideband_both;
    if (kind == "extended_ld") return Regime::extended_ld;
    throw config_error("unknown run kind: " + kind);
}

}  // namespace

ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun run;
    run.config = cfg;
    run.regime = kind_regime(cfg.kind, run.figure);

    int strength_sources = (cfg.chi ? 1 : 0) + (cfg.u ? 1 : 0) + (cfg.x0 ? 1 : 0);
    if (strength_sources > 1)
        throw config_error("run.chi, trap.u and trap.x0 are mutually exclusive");

    const bool carrier = run.regime == Regime::carrier_well1;
    double r1_scaled = 0.0;

    if (cfg.u || cfg.x0) {
        IonSpecies species{cfg.species, cfg.mass_kg};
        TrapGeometry geo = cfg.u ? derive_geometry(species, cfg.omega0, *cfg.u)
                                 : geometry_from_x0(species, cfg.omega0, *cfg.x0);
        run.geometry = geo;
        run.report = regime_report(geo, cfg.eta, cfg.g);

        TunnelingRates rates = closed_form_rates(geo);
        if (cfg.use_quadrature_rates) {
            const SubtractionScheme scheme = cfg.subtraction_scheme == "symmetrized"
                                                 ? SubtractionScheme::symmetrized
                                                 : SubtractionScheme::well1_parabola;
            const QuadratureSpec spec = default_quadrature(geo);
            rates.r1 = coupling_element(1, geo, spec, scheme);
            rates.r2 = coupling_element(2, geo, spec, scheme);
        }
        const double drive = carrier ? constants::hbar * cfg.g
                                     : constants::hbar * cfg.eta * cfg.g;
        if (!(drive > 0.0))
            throw config_error("laser.g and laser.eta must be positive to derive chi");
        run.chi = std::abs(rates.r2) / drive;
        r1_scaled = rates.r1 / drive;
    } else if (cfg.chi) {
        if (!(*cfg.chi >= 0.0)) throw config_error("run.chi must be >= 0");
        run.chi = *cfg.chi;
    } else if (run.figure) {
        run.chi = 1.0;   // stock figures sweep {0, 1}; keep the interesting one
    } else {
        throw config_error("kind '" + cfg.kind +
                           "' needs one of run.chi, trap.u or trap.x0");
    }

    run.params = carrier ? scaled_carrier_params(run.chi, r1_scaled, cfg.phi_l)
                         : scaled_sideband_params(run.chi, r1_scaled, cfg.phi_l);
    // keep the normalized drive (w or g equal to 1) but let the physical eta
    // through, since the optional Lamb-Dicke scalar factor depends on it
    if (carrier) {
        run.params.eta = cfg.eta;
    } else {
        if (!(cfg.eta > 0.0))
            throw config_error("laser.eta must be positive for sideband runs");
        run.params.eta = cfg.eta;
        run.params.g = 1.0 / cfg.eta;
    }
    run.params.ld_scalar_factor = cfg.ld_scalar_factor;

    TimeGrid grid = run.figure ? default_grid(*run.figure)
                    : carrier  ? default_grid(FigureId::fig2)
                               : default_grid(FigureId::fig1);
    if (cfg.t_start) grid.t_start = *cfg.t_start;
    if (cfg.t_end) grid.t_end = *cfg.t_end;
    if (cfg.num_points) grid.num_points = *cfg.num_points;
    try {
        validate_grid(grid);
    } catch (const domain_error& e) {
        throw config_error(std::string("grid: ") + e.what());
    }
    run.grid = grid;
    return run;
}

std::string resolve_output_dir(const RunConfig& cfg) {
    const char* env = std::getenv("DWTRAP_OUT");
    if (env != nullptr && *env != '\0') return env;
    return cfg.directory;
}

}  // namespace dwtrap

#include "dwtrap/csv_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dwtrap/errors.hpp"
#include "dwtrap/version.hpp"

namespace dwtrap {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const std::vector<LabeledSeries>& columns) {
    if (columns.empty()) throw domain_error("csv needs at least one column");
    const size_t rows = columns.front().values.size();
    for (const auto& c : columns)
        if (c.values.size() != rows)
            throw domain_error("csv columns have unequal lengths");

    std::ostringstream out;
    for (size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i].name;
    out << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i].unit;
    out << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i].method;
    out << "\n";
    for (size_t r = 0; r < rows; ++r) {
        for (size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << format_double(columns[i].values[r]);
        out << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw config_error("cannot create directory: " + p.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw config_error("write failed: " + path);
}

namespace {

const char* kEchoBegin = "# --- begin config-echo ---";
const char* kEchoEnd = "# --- end config-echo ---";

void kv(std::ostringstream& out, const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
}

}  // namespace

std::string render_metadata(const ResolvedRun& run,
                            const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ostringstream out;
    out << "# dwtrap run metadata\n";
    kv(out, "dwtrap_version", version);
    kv(out, "kind", run.config.kind);
    kv(out, "regime", regime_name(run.regime));
    if (run.figure) kv(out, "figure", figure_name(*run.figure));
    kv(out, "chi", format_double(run.chi));
    kv(out, "grid_t_start", format_double(run.grid.t_start));
    kv(out, "grid_t_end", format_double(run.grid.t_end));
    kv(out, "grid_num_points", std::to_string(run.grid.num_points));
    kv(out, "grid_scale",
       run.grid.scale == TimeScale::sideband_w ? "sideband_w" : "carrier_g");
    kv(out, "params_r1", format_double(run.params.r1));
    kv(out, "params_r2", format_double(run.params.r2));
    kv(out, "params_g", format_double(run.params.g));
    kv(out, "params_eta", format_double(run.params.eta));
    kv(out, "params_phi_l", format_double(run.params.phi_l));

    if (run.geometry) {
        const TrapGeometry& geo = *run.geometry;
        kv(out, "geometry_x0_m", format_double(geo.x0));
        kv(out, "geometry_delta_x_m", format_double(geo.delta_x));
        kv(out, "geometry_u", format_double(geo.u));
        kv(out, "geometry_b", format_double(geo.b));
        kv(out, "geometry_d", format_double(geo.d));
        kv(out, "geometry_barrier_J", format_double(geo.barrier));
    }
    if (run.report) {
        const RegimeReport& rep = *run.report;
        kv(out, "regime_epsilon", format_double(rep.epsilon));
        kv(out, "regime_eta", format_double(rep.eta));
        kv(out, "regime_rate_ratio", format_double(rep.rate_ratio));
        kv(out, "regime_energy_ratio", format_double(rep.energy_ratio));
        kv(out, "regime_flags", rep.flags());
        kv(out, "regime_ok", rep.all_ok ? "true" : "false");
    }

    // the two closed-form variants differ in a phase and a bracket weight;
    // record which reading this run used
    kv(out, "closed_form_variant", run.config.closed_form_variant);
    kv(out, "note_well1_phase",
       "corrected variant uses c12 = -i sin(xi w t)/xi; the printed form has "
       "the conjugate phase, fixed by the chi -> 0 limit of the two-well "
       "solution");
    kv(out, "note_both_wells_c21",
       "corrected variant drops the extra (chi^2+2) weight the printed c21 "
       "sum carries; direct propagation agrees with the corrected form");
    kv(out, "note_rabi_scale",
       "sideband time axis is w t with w = eta g; carrier time axis is g t");

    for (const auto& [key, value] : extra) kv(out, key, value);

    out << kEchoBegin << "\n";
    std::istringstream echo(echo_config(run.config));
    std::string line;
    while (std::getline(echo, line)) out << "#   " << line << "\n";
    out << kEchoEnd << "\n";
    return out.str();
}

std::string extract_config_echo(const std::string& metadata_text) {
    std::istringstream in(metadata_text);
    std::string line;
    std::ostringstream out;
    bool inside = false, found = false;
    while (std::getline(in, line)) {
        if (line == kEchoBegin) {
            inside = found = true;
            continue;
        }
        if (line == kEchoEnd) {
            inside = false;
            continue;
        }
        if (!inside) continue;
        std::string body = line;
        if (body.rfind("#   ", 0) == 0)
            body = body.substr(4);
        else if (body.rfind("#", 0) == 0)
            body = body.substr(1);
        out << body << "\n";
    }
    if (!found) throw config_error("metadata has no config-echo block");
    return out.str();
}

std::string render_plot_script(FigureId id, const std::vector<double>& chis,
                               const std::vector<std::string>& csv_names) {
    if (chis.size() != csv_names.size())
        throw domain_error("plot script needs one csv per chi");
    const bool both = id == FigureId::fig3;
    const char* xlabel = id == FigureId::fig2 ? "$g\\,t$" : "$\\mathsf{w}\\,t$";

    std::ostringstream out;
    out << "#!/usr/bin/env python3\n";
    out << "\"\"\"Plot " << figure_name(id)
        << " from the CSV files emitted next to this script.\"\"\"\n";
    out << "import csv\n";
    out << "import pathlib\n\n";
    out << "import matplotlib\n";
    out << "matplotlib.use(\"Agg\")\n";
    out << "import matplotlib.pyplot as plt\n\n";
    out << "here = pathlib.Path(__file__).resolve().parent\n\n";
    out << "def load(name):\n";
    out << "    with open(here / name, newline=\"\") as fh:\n";
    out << "        rows = list(csv.reader(fh))\n";
    out << "    names, data = rows[0], rows[3:]\n";
    out << "    cols = {n: [float(r[i]) for r in data] for i, n in enumerate(names)}\n";
    out << "    return names, cols\n\n";
    if (both)
        out << "fig, (ax, ax2) = plt.subplots(2, 1, figsize=(6.4, 7.2), sharex=True)\n";
    else
        out << "fig, ax = plt.subplots(figsize=(6.4, 4.0))\n";
    for (size_t i = 0; i < chis.size(); ++i) {
        const std::string chi = format_double(chis[i]);
        const char* style = chis[i] == 0.0 ? "\":\"" : "\"-\"";
        out << "names, cols = load(\"" << csv_names[i] << "\")\n";
        out << "ax.plot(cols[names[0]], cols[names[1]], " << style
            << ", label=\"chi = " << chi << "\")\n";
        if (both)
            out << "ax2.plot(cols[names[0]], cols[\"p_down_both_incoherent\"], " << style
                << ", label=\"chi = " << chi << "\")\n";
    }
    out << "ax.set_ylabel(\"$P_\\\\downarrow$\")\n";
    if (both) {
        out << "ax.set_title(\"coherent detection\")\n";
        out << "ax2.set_title(\"incoherent detection\")\n";
        out << "ax2.set_xlabel(\"" << xlabel << "\")\n";
        out << "ax2.set_ylabel(\"$P_\\\\downarrow$\")\n";
        out << "ax2.legend()\n";
    } else {
        out << "ax.set_xlabel(\"" << xlabel << "\")\n";
    }
    out << "ax.legend()\n";
    out << "fig.tight_layout()\n";
    out << "fig.savefig(here / \"" << figure_name(id) << ".png\", dpi=160)\n";
    out << "print(\"wrote\", here / \"" << figure_name(id) << ".png\")\n";
    return out.str();
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

EmittedFiles emit_figure(const ResolvedRun& run, const std::vector<FigureSeries>& series,
                         const std::string& out_dir) {
    if (!run.figure) throw domain_error("emit_figure needs a figure run");
    EmittedFiles files;
    std::vector<double> chis;
    std::vector<std::string> csv_names;
    std::vector<std::pair<std::string, std::string>> extra;

    for (const FigureSeries& s : series) {
        std::string chi_label = format_double(s.chi);
        for (char& c : chi_label)
            if (c == '.') c = 'p';   // keep the filename single-dotted
        const std::string csv_name = run.config.basename + "_" +
                                     figure_name(*run.figure) + "_chi_" + chi_label +
                                     ".csv";

        const std::string path = join_path(out_dir, csv_name);
        write_file(path, render_csv(s.columns));
        files.paths.push_back(path);
        chis.push_back(s.chi);
        csv_names.push_back(csv_name);
        extra.emplace_back("closed_vs_oracle_chi_" + chi_label,
                           format_double(s.closed_vs_oracle));
    }

    const std::string meta = join_path(out_dir, run.config.basename + "_" +
                                                    figure_name(*run.figure) + ".meta");
    write_file(meta, render_metadata(run, extra));
    files.paths.push_back(meta);

    const std::string script = join_path(
        out_dir, run.config.basename + "_" + figure_name(*run.figure) + "_plot.py");
    write_file(script, render_plot_script(*run.figure, chis, csv_names));
    files.paths.push_back(script);
    return files;
}

EmittedFiles emit_run(const ResolvedRun& run, const FigureSeries& series,
                      const std::string& out_dir) {
    EmittedFiles files;
    const std::string csv = join_path(out_dir, run.config.basename + ".csv");
    write_file(csv, render_csv(series.columns));
    files.paths.push_back(csv);

    const std::string meta = join_path(out_dir, run.config.basename + ".meta");
    write_file(meta,
               render_metadata(
                   run, {{"closed_vs_oracle", format_double(series.closed_vs_oracle)}}));
    files.paths.push_back(meta);
    return files;
}

EmittedFiles emit_sweep(const ResolvedRun& run, const std::vector<SweepRow>& rows,
                        const std::string& out_dir) {
    EmittedFiles files;
    const std::string path = join_path(out_dir, run.config.basename + "_sweep.csv");

    std::ostringstream out;
    out << "chi,frequency,amplitude,closed_vs_oracle,flags\n";
    out << "ratio,scale_units,probability,probability,-\n";
    out << "input,peaks,peaks,max_abs_diff,regime\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.chi) << "," << format_double(r.frequency) << ","
            << format_double(r.amplitude) << "," << format_double(r.closed_vs_oracle)
            << "," << r.flags << "\n";
    }
    write_file(path, out.str());
    files.paths.push_back(path);

    const std::string meta = join_path(out_dir, run.config.basename + "_sweep.meta");
    write_file(meta, render_metadata(run));
    files.paths.push_back(meta);
    return files;
}

}  // namespace dwtrap

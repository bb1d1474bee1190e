#pragma once

#include <string>
#include <vector>

#include "dwtrap/config.hpp"
#include "dwtrap/experiments.hpp"

namespace dwtrap {

// Shortest-practical deterministic float formatting (%.17g): identical
// configs produce byte-identical files on every run.
std::string format_double(double v);

// CSV layout: column-name row, units row, method/provenance row, then data.
std::string render_csv(const std::vector<LabeledSeries>& columns);
void write_file(const std::string& path, const std::string& content);

// Sidecar metadata: a [config-echo] block (extractable and re-parsable),
// derived parameters, library version, and the resolution notes for the
// ambiguities the closed forms carry.
std::string render_metadata(const ResolvedRun& run,
                            const std::vector<std::pair<std::string, std::string>>& extra = {});
std::string extract_config_echo(const std::string& metadata_text);

// Stand-alone matplotlib script plotting the emitted series: dotted line for
// chi = 0, solid line for chi > 0; the both-wells figure gets two panels
// (coherent / incoherent detection).
std::string render_plot_script(FigureId id, const std::vector<double>& chis,
                               const std::vector<std::string>& csv_names);

struct EmittedFiles {
    std::vector<std::string> paths;
};

// High-level emission used by the CLI: figure series + metadata + plot
// script, a single simulate run, or a sweep table.
EmittedFiles emit_figure(const ResolvedRun& run, const std::vector<FigureSeries>& series,
                         const std::string& out_dir);
EmittedFiles emit_run(const ResolvedRun& run, const FigureSeries& series,
                      const std::string& out_dir);
EmittedFiles emit_sweep(const ResolvedRun& run, const std::vector<SweepRow>& rows,
                        const std::string& out_dir);

}  // namespace dwtrap

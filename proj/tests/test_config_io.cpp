#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dwtrap/config.hpp"
#include "dwtrap/constants.hpp"
#include "dwtrap/csv_io.hpp"
#include "dwtrap/errors.hpp"

using namespace dwtrap;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = 3.14159265358979323846;

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dwtrap_tests_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}
}  // namespace

TEST_CASE("empty config text yields the stock run") {
    const RunConfig cfg = parse_config_text("");
    CHECK(cfg.kind == "fig1");
    CHECK(!cfg.chi.has_value());
    CHECK(cfg.levels == 2);
    CHECK(cfg.species == "ca40");
    CHECK(cfg.mass_kg == 40.0 * constants::amu);
    CHECK(cfg.omega0 == 2e6);
    CHECK(cfg.eta == 0.1);
    CHECK(cfg.g == 2e5);
    CHECK(cfg.phi_l == doctest::Approx(-kPi / 2.0));
    CHECK(cfg.angular_frequency_convention == "plain");
    CHECK(cfg.closed_form_variant == "corrected");
    CHECK(cfg.directory == "out");
}

TEST_CASE("full config parses and round-trips through the echo") {
    const std::string text = R"(# sideband run with explicit everything
[run]
kind = red_sideband_well1
chi = 0.75
levels = 2

[species]
name = mystery
mass_amu = 39.5

[trap]
omega0 = 1.9e6

[laser]
eta = 0.08
g = 1.5e5
phi_l = 0.2

[grid]
t_start = 0
t_end = 25.0
num_points = 501

[flags]
angular_frequency_convention = plain
use_quadrature_rates = false
ld_scalar_factor = true
closed_form_variant = printed
subtraction_scheme = symmetrized

[output]
directory = results
basename = sideband_a
)";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.kind == "red_sideband_well1");
    CHECK(cfg.chi == 0.75);
    CHECK(cfg.mass_kg == doctest::Approx(39.5 * constants::amu));
    CHECK(cfg.eta == 0.08);
    CHECK(cfg.t_end == 25.0);
    CHECK(cfg.num_points == 501);
    CHECK(cfg.ld_scalar_factor);
    CHECK(cfg.closed_form_variant == "printed");
    CHECK(cfg.subtraction_scheme == "symmetrized");
    CHECK(cfg.basename == "sideband_a");

    const RunConfig back = parse_config_text(echo_config(cfg));
    CHECK(back == cfg);
}

TEST_CASE("echo round-trips the defaults and the sweep list") {
    RunConfig cfg = parse_config_text("");
    CHECK(parse_config_text(echo_config(cfg)) == cfg);

    cfg.sweep_chis = {0.0, 0.5, 1.0, 2.0};
    cfg.chi = 1.0;
    cfg.u = 17.3;
    cfg.u.reset();
    CHECK(parse_config_text(echo_config(cfg)) == cfg);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_config_text("[nope]\n"), "unknown section [nope]",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config_text("[laser]\ncolor = red\n"),
                         "unknown key 'laser.color'", config_error);
    CHECK_THROWS_WITH_AS(parse_config_text("[laser]\neta = 0.1\neta = 0.2\n"),
                         "duplicate key 'laser.eta'", config_error);
    // the line number points at the offender
    try {
        parse_config_text("\n\njust words\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("[laser]\neta = fast\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[grid]\nnum_points = 3.5\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[flags]\nld_scalar_factor = maybe\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text("[run]\nkind = fig9\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[grid]\nnum_points = 1\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[run]\nlevels = 99\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[flags]\nclosed_form_variant = guessed\n"),
                    config_error);
}

TEST_CASE("species mass resolution") {
    CHECK_THROWS_AS(
        parse_config_text("[species]\nmass_amu = 40\nmass_kg = 6.6e-26\n"),
        config_error);
    CHECK_THROWS_AS(parse_config_text("[species]\nname = unobtainium\n"),
                    config_error);
    const RunConfig kg = parse_config_text("[species]\nname = x\nmass_kg = 5e-26\n");
    CHECK(kg.mass_kg == 5e-26);
    const RunConfig amu = parse_config_text("[species]\nname = be9\n");
    CHECK(amu.mass_kg == 9.0 * constants::amu);
    // non-registry mass survives the echo byte-exactly
    CHECK(parse_config_text(echo_config(kg)) == kg);
}

TEST_CASE("two_pi convention is folded in at parse time") {
    const RunConfig cfg = parse_config_text(
        "[trap]\nomega0 = 1e6\n[laser]\ng = 1e5\n"
        "[flags]\nangular_frequency_convention = two_pi\n");
    CHECK(cfg.omega0 == doctest::Approx(2.0 * kPi * 1e6).epsilon(1e-15));
    CHECK(cfg.g == doctest::Approx(2.0 * kPi * 1e5).epsilon(1e-15));
    // normalized so the echo (already in s^-1) does not fold twice
    CHECK(cfg.angular_frequency_convention == "plain");
    CHECK(parse_config_text(echo_config(cfg)) == cfg);
}

TEST_CASE("config file loader") {
    const fs::path dir = scratch_dir("cfg");
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "a.cfg";
    write_file(cfg_path.string(), "[run]\nkind = fig3\n");
    CHECK(parse_config_file(cfg_path.string()).kind == "fig3");
    CHECK_THROWS_AS(parse_config_file((dir / "missing.cfg").string()), config_error);
    fs::remove_all(dir);
}

TEST_CASE("resolve wires figures, chi and grids") {
    // stock figure: chi defaults to the interesting value 1
    ResolvedRun fig = resolve(parse_config_text(""));
    CHECK(fig.regime == Regime::red_sideband_well1);
    REQUIRE(fig.figure.has_value());
    CHECK(*fig.figure == FigureId::fig1);
    CHECK(fig.chi == 1.0);
    CHECK(!fig.geometry.has_value());
    CHECK(fig.grid.t_end == doctest::Approx(6.0 * kPi));
    CHECK(fig.grid.num_points == 2001);
    // sideband scaling keeps w = eta g = 1 while tracking the physical eta
    CHECK(fig.params.eta == 0.1);
    CHECK(fig.params.g == doctest::Approx(10.0));
    CHECK(fig.params.r2 == 1.0);

    ResolvedRun fig2 = resolve(parse_config_text("[run]\nkind = fig2\n"));
    CHECK(fig2.regime == Regime::carrier_well1);
    CHECK(fig2.grid.scale == TimeScale::carrier_g);
    CHECK(fig2.params.g == 1.0);

    // grid overrides
    ResolvedRun custom = resolve(parse_config_text(
        "[run]\nchi = 0.5\n[grid]\nt_end = 10\nnum_points = 11\n"));
    CHECK(custom.chi == 0.5);
    CHECK(custom.grid.t_end == 10.0);
    CHECK(custom.grid.num_points == 11);

    CHECK_THROWS_AS(resolve(parse_config_text("[grid]\nt_end = -1\n")), config_error);
    CHECK_THROWS_AS(
        resolve(parse_config_text("[run]\nkind = red_sideband_well1\n")),
        config_error);
    CHECK_THROWS_AS(resolve(parse_config_text("[run]\nchi = 1\n[trap]\nu = 17.3\n")),
                    config_error);
    CHECK_THROWS_AS(resolve(parse_config_text("[run]\nchi = -0.5\n")), config_error);
}

TEST_CASE("resolve derives chi from the trap geometry") {
    // stock point: u = 17.3, eta = 0.1, g = 2e5 lands chi just below 1
    const ResolvedRun run = resolve(parse_config_text("[trap]\nu = 17.3\n"));
    REQUIRE(run.geometry.has_value());
    REQUIRE(run.report.has_value());
    CHECK(run.chi == doctest::Approx(0.98275714472073139).epsilon(1e-14));
    CHECK(run.report->all_ok);
    // u round-trips through x0 = sqrt(u) dx and back, so only to an ulp
    CHECK(run.geometry->u == doctest::Approx(17.3).epsilon(1e-15));

    // the same double-well expressed through x0 instead of u
    const ResolvedRun via_x0 = resolve(
        parse_config_text("[trap]\nx0 = 8.2866041178522952e-08\n"));
    CHECK(via_x0.chi == doctest::Approx(run.chi).epsilon(1e-12));

    // quadrature rates shift chi by the known closed-form/quadrature gap
    const ResolvedRun quad = resolve(parse_config_text(
        "[trap]\nu = 17.3\n[flags]\nuse_quadrature_rates = true\n"));
    CHECK(quad.chi / run.chi == doctest::Approx(1.035380458221262).epsilon(1e-9));

    // geometry runs keep the small ground-level tunneling: r1/r2 = 1/u, so
    // the scaled value is chi/u rather than the figure default 0
    CHECK(run.params.r1 == doctest::Approx(run.chi / 17.3).epsilon(1e-12));
}

TEST_CASE("output directory override") {
    RunConfig cfg;
    cfg.directory = "somewhere";
    unsetenv("DWTRAP_OUT");
    CHECK(resolve_output_dir(cfg) == "somewhere");
    setenv("DWTRAP_OUT", "/tmp/elsewhere", 1);
    CHECK(resolve_output_dir(cfg) == "/tmp/elsewhere");
    setenv("DWTRAP_OUT", "", 1);
    CHECK(resolve_output_dir(cfg) == "somewhere");
    unsetenv("DWTRAP_OUT");
}

TEST_CASE("float formatting is lossless") {
    for (double v : {0.1, 1.0, -2.5e-31, 3.141592653589793, 6.6421562800000003e-26}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv rendering") {
    const std::vector<LabeledSeries> cols = {
        {"t", "w*t", "grid", {0.0, 0.5, 1.0}},
        {"p", "probability", "expm", {0.0, 0.25, 1.0}},
    };
    const std::string csv = render_csv(cols);
    CHECK(csv ==
          "t,p\n"
          "w*t,probability\n"
          "grid,expm\n"
          "0,0\n"
          "0.5,0.25\n"
          "1,1\n");

    CHECK_THROWS_AS(render_csv({}), domain_error);
    const std::vector<LabeledSeries> ragged = {
        {"a", "-", "-", {1.0}},
        {"b", "-", "-", {1.0, 2.0}},
    };
    CHECK_THROWS_AS(render_csv(ragged), domain_error);
}

TEST_CASE("write_file creates parent directories") {
    const fs::path dir = scratch_dir("io");
    const fs::path nested = dir / "a" / "b" / "f.txt";
    write_file(nested.string(), "payload\n");
    CHECK(slurp(nested) == "payload\n");
    fs::remove_all(dir);
}

TEST_CASE("metadata carries a re-parsable config echo") {
    const ResolvedRun run = resolve(parse_config_text("[trap]\nu = 17.3\n"));
    const std::string meta = render_metadata(run, {{"custom_key", "7"}});
    CHECK(meta.find("dwtrap_version = ") != std::string::npos);
    CHECK(meta.find("regime = red_sideband_well1") != std::string::npos);
    CHECK(meta.find("geometry_u = 17.2") != std::string::npos);   // 17.299999...
    CHECK(meta.find("geometry_x0_m = ") != std::string::npos);
    CHECK(meta.find("regime_flags = eps=PASS;eta=PASS;rate=PASS;energy=PASS") !=
          std::string::npos);
    CHECK(meta.find("custom_key = 7") != std::string::npos);
    CHECK(meta.find("note_well1_phase") != std::string::npos);

    const RunConfig back = parse_config_text(extract_config_echo(meta));
    CHECK(back == run.config);

    CHECK_THROWS_AS(extract_config_echo("dwtrap_version = 1\n"), config_error);
}

TEST_CASE("plot script contents") {
    const std::string script = render_plot_script(
        FigureId::fig3, {0.0, 1.0}, {"run_fig3_chi_0.csv", "run_fig3_chi_1.csv"});
    CHECK(script.find("matplotlib") != std::string::npos);
    CHECK(script.find("run_fig3_chi_1.csv") != std::string::npos);
    CHECK(script.find("p_down_both_incoherent") != std::string::npos);
    CHECK(script.find("fig3.png") != std::string::npos);
    // chi = 0 is drawn dotted, the nonzero curve solid
    CHECK(script.find("\":\"") != std::string::npos);
    CHECK(script.find("\"-\"") != std::string::npos);
    CHECK_THROWS_AS(render_plot_script(FigureId::fig1, {0.0}, {}), domain_error);
}

TEST_CASE("figure emission writes the full file set") {
    const fs::path dir = scratch_dir("emit");
    const ResolvedRun run = resolve(parse_config_text(""));
    const auto series = reproduce_figure(
        {FigureId::fig1, {0.0, 1.0}, TimeGrid{0.0, 2.0, 5, TimeScale::sideband_w}});
    const EmittedFiles files = emit_figure(run, series, dir.string());
    REQUIRE(files.paths.size() == 4);
    CHECK(fs::path(files.paths[0]).filename() == "run_fig1_chi_0.csv");
    CHECK(fs::path(files.paths[1]).filename() == "run_fig1_chi_1.csv");
    CHECK(fs::path(files.paths[2]).filename() == "run_fig1.meta");
    CHECK(fs::path(files.paths[3]).filename() == "run_fig1_plot.py");
    for (const auto& p : files.paths) CHECK(fs::exists(p));
    // per-chi oracle deviations are recorded in the metadata
    const std::string meta = slurp(files.paths[2]);
    CHECK(meta.find("closed_vs_oracle_chi_0 = ") != std::string::npos);
    CHECK(meta.find("closed_vs_oracle_chi_1 = ") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("run and sweep emission") {
    const fs::path dir = scratch_dir("emit2");
    ResolvedRun run = resolve(parse_config_text("[run]\nchi = 1\n"));
    const auto series = reproduce_figure(
        {FigureId::fig1, {1.0}, TimeGrid{0.0, 2.0, 5, TimeScale::sideband_w}});
    const EmittedFiles single = emit_run(run, series[0], dir.string());
    REQUIRE(single.paths.size() == 2);
    CHECK(fs::path(single.paths[0]).filename() == "run.csv");
    CHECK(fs::path(single.paths[1]).filename() == "run.meta");

    const std::vector<SweepRow> rows = {{0.0, 1.0, 1.0, 1e-15, "-"},
                                        {1.0, 1.414, 0.5, 2e-15, "-"}};
    const EmittedFiles swept = emit_sweep(run, rows, dir.string());
    REQUIRE(swept.paths.size() == 2);
    const std::string csv = slurp(swept.paths[0]);
    CHECK(csv.find("chi,frequency,amplitude,closed_vs_oracle,flags") == 0);
    CHECK(csv.find("1,1.4139999999999999,0.5,") != std::string::npos);
    fs::remove_all(dir);
}

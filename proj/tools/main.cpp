// Command-line front end: evaluate one parameter point, run explicit sweeps,
// reproduce the bundled figure presets, or cross-check the closed forms
// against the generic pipeline.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
// failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spincorr/closed_forms.hpp"
#include "spincorr/sweep.hpp"

namespace {

using spincorr::InvalidGrid;
using spincorr::InvalidInput;
namespace sweep = spincorr::sweep;
namespace models = spincorr::models;

struct GlobalOptions {
    std::string out;
    int threads = 1;
    std::uint64_t seed = 42;
    int density = 1;
};

sweep::Axis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw InvalidGrid("axis must look like name=start:stop:step: " + text);
    sweep::Axis axis;
    axis.name = text.substr(0, eq);
    const std::string range = text.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw InvalidGrid("axis must look like name=start:stop:step: " + text);
    try {
        axis.start = std::stod(range.substr(0, c1));
        axis.stop = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
        axis.step = std::stod(range.substr(c2 + 1));
    } catch (const std::exception&) {
        throw InvalidGrid("cannot parse axis numbers: " + text);
    }
    return axis;
}

std::pair<std::string, double> parse_fixed(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw InvalidGrid("fixed parameter must look like name=value: " + text);
    try {
        return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
    } catch (const std::exception&) {
        throw InvalidGrid("cannot parse fixed parameter: " + text);
    }
}

sweep::ModelKind parse_model(const std::string& name) {
    if (name == "xxz") return sweep::ModelKind::Xxz;
    if (name == "dm" || name == "xxx-dm") return sweep::ModelKind::XxxDm;
    throw InvalidInput("unknown model: " + name + " (expected xxz or dm)");
}

int run_eval(const GlobalOptions& g, const std::string& model_name, double J, double Jz,
             double B, double b, double D, double T) {
    const sweep::ModelKind kind = parse_model(model_name);
    models::ThermalPoint point;
    nlohmann::json params;
    if (kind == sweep::ModelKind::Xxz) {
        point.spec = models::XxzSpec{J, Jz, B, b};
        params = {{"J", J}, {"Jz", Jz}, {"B", B}, {"b", b}, {"T", T}};
    } else {
        point.spec = models::XxxDmSpec{J, D};
        params = {{"J", J}, {"D", D}, {"T", T}};
    }
    point.temperature = T;

    const auto r = spincorr::correlations::correlation_report(point);
    nlohmann::json out{{"model", kind == sweep::ModelKind::Xxz ? "xxz" : "dm"},
                       {"parameters", params},
                       {"logZ", r.log_z},
                       {"S_rho", r.s_rho},
                       {"S_a", r.s_a},
                       {"S_b", r.s_b},
                       {"I_rho", r.i_rho},
                       {"I_measured", r.i_measured},
                       {"Q", r.q},
                       {"C", r.c}};
    const std::string text = out.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw spincorr::IoError("cannot open for writing: " + g.out);
        f << text;
        if (!f) throw spincorr::IoError("write failed: " + g.out);
    }
    return 0;
}

int run_sweep_cmd(const GlobalOptions& g, const std::string& model_name,
                  const std::vector<std::string>& axis_specs,
                  const std::vector<std::string>& fixed_specs) {
    sweep::SweepGrid grid;
    grid.model = parse_model(model_name);
    for (const auto& a : axis_specs) grid.axes.push_back(parse_axis(a));
    for (const auto& f : fixed_specs) grid.fixed.insert(parse_fixed(f));

    const auto table = sweep::to_table(grid, sweep::run_sweep(grid, g.threads));
    if (g.out.empty())
        sweep::emit_csv(table, std::cout);
    else
        sweep::emit_csv(table, g.out);
    return 0;
}

void apply_range_overrides(sweep::FigurePanel& panel, const std::vector<sweep::Axis>& overrides) {
    auto patch = [&](sweep::Axis& axis) {
        for (const auto& o : overrides)
            if (o.name == axis.name) axis = o;
    };
    if (panel.grid)
        for (auto& axis : panel.grid->axes) patch(axis);
    if (panel.x_axis) patch(*panel.x_axis);
}

int run_figure(const GlobalOptions& g, const std::string& id,
               const std::vector<std::string>& range_specs) {
    std::vector<sweep::Axis> overrides;
    for (const auto& r : range_specs) overrides.push_back(parse_axis(r));

    auto panels = sweep::figure_preset(id);
    const std::filesystem::path dir = g.out.empty() ? "." : g.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw spincorr::IoError("cannot create output directory: " + dir.string());

    for (auto& panel : panels) {
        apply_range_overrides(panel, overrides);
        const std::string name = id + (panel.label.empty() ? "" : "_" + panel.label) + ".csv";
        const auto path = (dir / name).string();
        sweep::emit_csv(sweep::run_panel(panel, g.threads), path);
        std::cout << path << "\n";
    }
    return 0;
}

int run_verify(const GlobalOptions& g) {
    sweep::VerifyOptions options;
    options.seed = g.seed;
    options.threads = g.threads;
    options.density = g.density;
    const auto result = sweep::verify_oracles(options);
    std::cout << result.report;
    return result.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum correlation (measurement-induced disturbance) and thermal\n"
                 "entanglement (concurrence) for two-qubit XXZ and XXX+DM spin models."};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key = value file");

    GlobalOptions g;
    app.add_option("--out", g.out, "Output path (file for eval/sweep, directory for figure)");
    app.add_option("--threads", g.threads, "Worker threads for sweeps and verification")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "RNG seed for the verification sample");
    app.add_option("--grid-density", g.density, "Multiplies the verification sample count")
        ->check(CLI::PositiveNumber);

    std::string model = "xxz";
    double J = 0, Jz = 0, B = 0, b = 0, D = 0, T = 1;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate one parameter point, emit JSON");
    eval_cmd->add_option("--model", model, "xxz or dm")->required();
    eval_cmd->add_option("--J", J, "in-plane coupling");
    eval_cmd->add_option("--Jz", Jz, "axial coupling (xxz)");
    eval_cmd->add_option("--B", B, "uniform field >= 0 (xxz)");
    eval_cmd->add_option("--b", b, "field inhomogeneity (xxz)");
    eval_cmd->add_option("--D", D, "DM strength along z (dm)");
    eval_cmd->add_option("--T", T, "temperature > 0")->required();

    std::string sweep_model = "xxz";
    std::vector<std::string> axis_specs, fixed_specs;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an explicit grid, emit CSV");
    sweep_cmd->add_option("--model", sweep_model, "xxz or dm")->required();
    sweep_cmd->add_option("--axis", axis_specs, "axis as name=start:stop:step (1 or 2)")
        ->required()
        ->expected(1, 2);
    sweep_cmd->add_option("--fix", fixed_specs, "fixed parameter as name=value");

    std::string figure_id;
    std::vector<std::string> range_specs;
    auto* figure_cmd = app.add_subcommand("figure", "Run a bundled preset, one CSV per panel");
    figure_cmd->add_option("id", figure_id, "fig1..fig6")->required();
    figure_cmd->add_option("--range", range_specs,
                           "override a preset axis as name=start:stop:step");

    auto* verify_cmd =
        app.add_subcommand("verify", "Cross-check closed forms against the generic pipeline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval_cmd) return run_eval(g, model, J, Jz, B, b, D, T);
        if (*sweep_cmd) return run_sweep_cmd(g, sweep_model, axis_specs, fixed_specs);
        if (*figure_cmd) return run_figure(g, figure_id, range_specs);
        if (*verify_cmd) return run_verify(g);
    } catch (const spincorr::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const spincorr::Overflow& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

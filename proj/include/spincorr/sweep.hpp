#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/correlations.hpp"

// Parameter-sweep engine, figure presets and CSV emission. Sweeps evaluate
// the generic pipeline per grid point; points are independent, so they may
// run on several threads, with results gathered into pre-indexed slots so
// output never depends on scheduling.
namespace spincorr::sweep {

enum class ModelKind { Xxz, XxxDm };

/// Inclusive range start..stop sampled at start + k*step.
struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

/// Cartesian grid over one or two named parameters with the rest fixed.
/// Parameter names: J, Jz, B, b, T for the XXZ model and J, D, T for the DM
/// model. T must appear (as axis or fixed) and be positive throughout.
struct SweepGrid {
    ModelKind model = ModelKind::Xxz;
    std::vector<Axis> axes;
    std::map<std::string, double> fixed;
};

struct SweepRow {
    std::vector<double> axis_values;
    double q = 0.0;
    double c = 0.0;
    double log_z = 0.0;
};

std::size_t axis_point_count(const Axis& axis);
double axis_value(const Axis& axis, std::size_t index);

/// Throws InvalidGrid on malformed grids (bad axis count, step <= 0,
/// start > stop, unknown or duplicate parameter names, missing or
/// nonpositive T, negative B).
void validate(const SweepGrid& grid);

/// Rows in lexicographic axis order, first axis outermost. A failing point
/// aborts the sweep with the offending parameters named.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, int threads = 1);

/// Flat table destined for CSV: named columns, double-valued rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Columns are the axis names followed by Q, C, logZ.
Table to_table(const SweepGrid& grid, const std::vector<SweepRow>& rows);

/// Header line plus one line per row; values at 12 significant digits,
/// comma-separated, LF line endings, no trailing separator.
void emit_csv(const Table& table, std::ostream& os);
void emit_csv(const Table& table, const std::string& path);

/// One output file of a figure preset. Panels either hold a model grid or,
/// for the x-parameterized isotropic figure, a bare x axis evaluated with
/// the closed-form reductions.
struct FigurePanel {
    std::string label;  // file suffix; empty for single-panel figures
    std::optional<SweepGrid> grid;
    std::optional<Axis> x_axis;
};

/// Presets fig1..fig6. Captured fixed parameters follow the associated
/// parameter studies; plotted ranges are project defaults and can be
/// overridden at the CLI. Throws InvalidInput for unknown ids.
std::vector<FigurePanel> figure_preset(const std::string& id);

Table run_panel(const FigurePanel& panel, int threads = 1);

/// Cross-check of generic pipeline vs closed forms on seeded random
/// parameter clouds (XXZ: J, Jz in [-2,2], B in [0,2], b in [-2,2],
/// T in [0.1,2]; DM: J in [-3,3], D in [0,3], T in [0.1,2]).
struct VerifyOptions {
    std::uint64_t seed = 42;
    int threads = 1;
    int density = 1;  // multiplies the 10^4 base sample count per model
    double tolerance = 1e-9;
};

struct VerifyResult {
    double xxz_q_dev = 0.0;
    double xxz_c_dev = 0.0;
    double dm_q_dev = 0.0;
    double dm_c_dev = 0.0;
    bool passed = false;
    std::string report;  // byte-stable across thread counts
};

VerifyResult verify_oracles(const VerifyOptions& options);

}  // namespace spincorr::sweep

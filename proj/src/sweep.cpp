#include "spincorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "spincorr/closed_forms.hpp"

namespace spincorr::sweep {

namespace {

const std::set<std::string>& allowed_names(ModelKind model) {
    static const std::set<std::string> xxz{"J", "Jz", "B", "b", "T"};
    static const std::set<std::string> dm{"J", "D", "T"};
    return model == ModelKind::Xxz ? xxz : dm;
}

models::ThermalPoint make_point(ModelKind model, const std::map<std::string, double>& values) {
    auto get = [&](const char* name) {
        auto it = values.find(name);
        return it == values.end() ? 0.0 : it->second;
    };
    models::ThermalPoint point;
    if (model == ModelKind::Xxz)
        point.spec = models::XxzSpec{get("J"), get("Jz"), get("B"), get("b")};
    else
        point.spec = models::XxxDmSpec{get("J"), get("D")};
    point.temperature = get("T");
    return point;
}

std::string describe_point(const std::map<std::string, double>& values) {
    std::string out;
    char buf[64];
    for (const auto& [name, value] : values) {
        std::snprintf(buf, sizeof buf, "%s%s=%.12g", out.empty() ? "" : " ", name.c_str(), value);
        out += buf;
    }
    return out;
}

// Index-addressed parallel loop; the work items are pure, so any schedule
// produces identical results. The first exception wins and is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads < 1) throw InvalidInput("thread count must be >= 1");
    const std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        constexpr std::size_t chunk = 16;
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const std::size_t end = std::min(begin + chunk, n);
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::size_t axis_point_count(const Axis& axis) {
    return static_cast<std::size_t>(std::floor((axis.stop - axis.start) / axis.step + 1e-9)) + 1;
}

double axis_value(const Axis& axis, std::size_t index) {
    return axis.start + static_cast<double>(index) * axis.step;
}

void validate(const SweepGrid& grid) {
    if (grid.axes.empty() || grid.axes.size() > 2)
        throw InvalidGrid("a sweep needs one or two axes");

    const auto& names = allowed_names(grid.model);
    std::set<std::string> seen;
    bool has_t = false;

    for (const auto& axis : grid.axes) {
        if (!names.count(axis.name))
            throw InvalidGrid("unknown axis parameter: " + axis.name);
        if (!seen.insert(axis.name).second)
            throw InvalidGrid("duplicate parameter: " + axis.name);
        if (!(axis.step > 0.0) || !std::isfinite(axis.step))
            throw InvalidGrid("axis step must be positive: " + axis.name);
        if (!(axis.start <= axis.stop))
            throw InvalidGrid("axis start must not exceed stop: " + axis.name);
        if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
            throw InvalidGrid("axis range must be finite: " + axis.name);
        if (axis.name == "T") {
            has_t = true;
            if (!(axis.start > 0.0)) throw InvalidGrid("T values must all be positive");
        }
        if (axis.name == "B" && axis.start < 0.0)
            throw InvalidGrid("B values must be >= 0");
    }
    for (const auto& [name, value] : grid.fixed) {
        if (!names.count(name)) throw InvalidGrid("unknown fixed parameter: " + name);
        if (!seen.insert(name).second) throw InvalidGrid("duplicate parameter: " + name);
        if (!std::isfinite(value)) throw InvalidGrid("fixed parameter must be finite: " + name);
        if (name == "T") {
            has_t = true;
            if (!(value > 0.0)) throw InvalidGrid("T values must all be positive");
        }
        if (name == "B" && value < 0.0) throw InvalidGrid("B values must be >= 0");
    }
    if (!has_t) throw InvalidGrid("temperature T must be given as an axis or fixed value");
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, int threads) {
    validate(grid);

    std::vector<std::size_t> counts;
    counts.reserve(grid.axes.size());
    std::size_t total = 1;
    for (const auto& axis : grid.axes) {
        counts.push_back(axis_point_count(axis));
        total *= counts.back();
    }

    std::vector<SweepRow> rows(total);
    parallel_for(total, threads, [&](std::size_t index) {
        std::map<std::string, double> values = grid.fixed;
        SweepRow& row = rows[index];
        row.axis_values.resize(grid.axes.size());
        std::size_t rest = index;
        for (std::size_t a = grid.axes.size(); a-- > 0;) {
            const std::size_t i = rest % counts[a];
            rest /= counts[a];
            row.axis_values[a] = axis_value(grid.axes[a], i);
            values[grid.axes[a].name] = row.axis_values[a];
        }
        try {
            const auto report = correlations::correlation_report(make_point(grid.model, values));
            row.q = report.q;
            row.c = report.c;
            row.log_z = report.log_z;
        } catch (const std::exception& e) {
            throw NumericalFailure("sweep point failed (" + describe_point(values) + "): " + e.what());
        }
    });
    return rows;
}

Table to_table(const SweepGrid& grid, const std::vector<SweepRow>& rows) {
    Table t;
    for (const auto& axis : grid.axes) t.columns.push_back(axis.name);
    t.columns.insert(t.columns.end(), {"Q", "C", "logZ"});
    t.rows.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> r = row.axis_values;
        r.push_back(row.q);
        r.push_back(row.c);
        r.push_back(row.log_z);
        t.rows.push_back(std::move(r));
    }
    return t;
}

void emit_csv(const Table& table, std::ostream& os) {
    if (table.rows.empty()) throw InvalidInput("emit_csv: table has no rows");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_value(row[i]);
        }
        os << '\n';
    }
}

void emit_csv(const Table& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    emit_csv(table, f);
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

std::vector<FigurePanel> figure_preset(const std::string& id) {
    auto label_value = [](const char* prefix, double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%g", prefix, v);
        return std::string(buf);
    };

    // Lower bound for temperature axes that run toward zero; the models
    // reject T = 0 outright.
    constexpr double t_min = 1e-3;

    std::vector<FigurePanel> panels;
    if (id == "fig1") {
        for (double t : {0.1, 0.4, 0.8, 1.5}) {
            SweepGrid g{ModelKind::Xxz,
                        {{"b", -3.0, 3.0, 0.05}},
                        {{"J", 1.0}, {"Jz", 0.0}, {"B", 0.0}, {"T", t}}};
            panels.push_back({label_value("T", t), g, std::nullopt});
        }
    } else if (id == "fig2") {
        for (double jz : {0.0, 0.4, 0.8}) {
            SweepGrid g{ModelKind::Xxz,
                        {{"J", -3.0, 3.0, 0.05}},
                        {{"Jz", jz}, {"B", 0.0}, {"b", 0.8}, {"T", 0.4}}};
            panels.push_back({label_value("Jz", jz), g, std::nullopt});
        }
    } else if (id == "fig3") {
        for (double b : {0.0, 0.8}) {
            SweepGrid g{ModelKind::Xxz,
                        {{"B", 0.0, 3.0, 0.1}, {"T", t_min, 2.0, 0.1}},
                        {{"J", 1.0}, {"Jz", 0.4}, {"b", b}}};
            panels.push_back({label_value("b", b), g, std::nullopt});
        }
    } else if (id == "fig4") {
        SweepGrid g{ModelKind::Xxz,
                    {{"b", -3.0, 3.0, 0.1}, {"T", t_min, 2.0, 0.1}},
                    {{"J", 1.0}, {"Jz", 0.8}, {"B", 0.0}}};
        panels.push_back({"", g, std::nullopt});
    } else if (id == "fig5") {
        panels.push_back({"", std::nullopt, Axis{"x", 0.0, 5.0, 0.05}});
    } else if (id == "fig6") {
        SweepGrid g{ModelKind::XxxDm,
                    {{"D", 0.0, 3.0, 0.1}, {"J", -3.0, 3.0, 0.1}},
                    {{"T", 0.6}}};
        panels.push_back({"", g, std::nullopt});
    } else {
        throw InvalidInput("unknown figure id: " + id + " (expected fig1..fig6)");
    }
    return panels;
}

Table run_panel(const FigurePanel& panel, int threads) {
    if (panel.grid) return to_table(*panel.grid, run_sweep(*panel.grid, threads));

    const Axis& ax = *panel.x_axis;
    Table t;
    t.columns = {"x", "Q", "C"};
    const std::size_t n = axis_point_count(ax);
    t.rows.resize(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const double x = axis_value(ax, i);
        t.rows[i] = {x, closed_forms::dm_isotropic_mid(x), closed_forms::dm_isotropic_concurrence(x)};
    });
    return t;
}

namespace {

// Portable uniform double in [lo, hi): fixed 53-bit mapping so the stream is
// identical on every platform and standard library.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

struct Deviation {
    double value = -1.0;
    std::size_t index = 0;
};

void track(Deviation& worst, double value, std::size_t index) {
    if (value > worst.value) {
        worst.value = value;
        worst.index = index;
    }
}

}  // namespace

VerifyResult verify_oracles(const VerifyOptions& options) {
    if (options.density < 1) throw InvalidInput("grid density must be >= 1");
    if (options.threads < 1) throw InvalidInput("thread count must be >= 1");
    const std::size_t n = static_cast<std::size_t>(10000) * options.density;

    std::mt19937_64 rng(options.seed);
    std::vector<std::array<double, 5>> xxz_pts(n);
    for (auto& p : xxz_pts)
        p = {uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0, 2),
             uniform(rng, -2, 2), uniform(rng, 0.1, 2)};
    std::vector<std::array<double, 3>> dm_pts(n);
    for (auto& p : dm_pts)
        p = {uniform(rng, -3, 3), uniform(rng, 0, 3), uniform(rng, 0.1, 2)};

    std::vector<double> xxz_dq(n), xxz_dc(n), dm_dq(n), dm_dc(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
        const auto& p = xxz_pts[i];
        const auto rep = correlations::correlation_report(
            {models::XxzSpec{p[0], p[1], p[2], p[3]}, p[4]});
        xxz_dq[i] = std::abs(rep.q - closed_forms::xxz_mid(p[0], p[1], p[2], p[3], p[4]));
        xxz_dc[i] = std::abs(rep.c - closed_forms::xxz_concurrence(p[0], p[1], p[2], p[3], p[4]));
    });
    parallel_for(n, options.threads, [&](std::size_t i) {
        const auto& p = dm_pts[i];
        const auto rep = correlations::correlation_report({models::XxxDmSpec{p[0], p[1]}, p[2]});
        dm_dq[i] = std::abs(rep.q - closed_forms::dm_mid(p[0], p[1], p[2]));
        dm_dc[i] = std::abs(rep.c - closed_forms::dm_concurrence(p[0], p[1], p[2]));
    });

    Deviation wxq, wxc, wdq, wdc;
    for (std::size_t i = 0; i < n; ++i) {
        track(wxq, xxz_dq[i], i);
        track(wxc, xxz_dc[i], i);
        track(wdq, dm_dq[i], i);
        track(wdc, dm_dc[i], i);
    }

    VerifyResult result;
    result.xxz_q_dev = wxq.value;
    result.xxz_c_dev = wxc.value;
    result.dm_q_dev = wdq.value;
    result.dm_c_dev = wdc.value;
    result.passed = wxq.value <= options.tolerance && wxc.value <= options.tolerance &&
                    wdq.value <= options.tolerance && wdc.value <= options.tolerance;

    char line[256];
    std::string report;
    auto xxz_line = [&](const char* tag, const Deviation& d) {
        const auto& p = xxz_pts[d.index];
        std::snprintf(line, sizeof line,
                      "XXZ %s: max |generic - closed| = %.9e at J=%.12g Jz=%.12g B=%.12g b=%.12g T=%.12g\n",
                      tag, d.value, p[0], p[1], p[2], p[3], p[4]);
        report += line;
    };
    auto dm_line = [&](const char* tag, const Deviation& d) {
        const auto& p = dm_pts[d.index];
        std::snprintf(line, sizeof line,
                      "DM  %s: max |generic - closed| = %.9e at J=%.12g D=%.12g T=%.12g\n",
                      tag, d.value, p[0], p[1], p[2]);
        report += line;
    };
    xxz_line("Q", wxq);
    xxz_line("C", wxc);
    dm_line("Q", wdq);
    dm_line("C", wdc);
    std::snprintf(line, sizeof line, "verify: %s (tolerance %.3g; %zu samples per model; seed %llu)\n",
                  result.passed ? "PASS" : "FAIL", options.tolerance, n,
                  static_cast<unsigned long long>(options.seed));
    report += line;
    result.report = report;
    return result;
}

}  // namespace spincorr::sweep

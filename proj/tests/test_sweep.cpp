#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spincorr/sweep.hpp"

using namespace spincorr;
using namespace spincorr::sweep;

namespace {

SweepGrid fig1_like_grid() {
    return SweepGrid{ModelKind::Xxz,
                     {{"b", -3.0, 3.0, 0.1}},
                     {{"J", 1.0}, {"Jz", 0.0}, {"B", 0.0}, {"T", 0.4}}};
}

std::size_t expected_rows(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes)
        n *= static_cast<std::size_t>(std::floor((a.stop - a.start) / a.step + 1e-9)) + 1;
    return n;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_NOTHROW(validate(fig1_like_grid()));

    SweepGrid g = fig1_like_grid();
    g.axes.clear();
    CHECK_THROWS_AS(validate(g), InvalidGrid);

    g = fig1_like_grid();
    g.axes.push_back({"Jz", 0, 1, 0.5});
    g.axes.push_back({"B", 0, 1, 0.5});
    CHECK_THROWS_AS(validate(g), InvalidGrid);  // three axes

    g = fig1_like_grid();
    g.axes[0].step = 0.0;
    CHECK_THROWS_AS(validate(g), InvalidGrid);

    g = fig1_like_grid();
    g.axes[0].start = 4.0;
    CHECK_THROWS_AS(validate(g), InvalidGrid);  // start > stop

    g = fig1_like_grid();
    g.axes[0].name = "D";
    CHECK_THROWS_AS(validate(g), InvalidGrid);  // D is not an XXZ parameter

    g = fig1_like_grid();
    g.fixed.erase("T");
    CHECK_THROWS_AS(validate(g), InvalidGrid);  // T missing

    g = fig1_like_grid();
    g.fixed["T"] = 0.0;
    CHECK_THROWS_AS(validate(g), InvalidGrid);

    g = fig1_like_grid();
    g.fixed["b"] = 1.0;  // duplicates the axis parameter
    CHECK_THROWS_AS(validate(g), InvalidGrid);

    g = fig1_like_grid();
    g.fixed["B"] = -0.5;
    CHECK_THROWS_AS(validate(g), InvalidGrid);

    SweepGrid dm{ModelKind::XxxDm, {{"D", 0, 3, 0.1}}, {{"J", 1.0}, {"T", 0.6}}};
    CHECK_NOTHROW(validate(dm));
    dm.axes[0].name = "Jz";
    CHECK_THROWS_AS(validate(dm), InvalidGrid);
}

TEST_CASE("row counts and ordering") {
    const auto rows = run_sweep(fig1_like_grid());
    REQUIRE(rows.size() == 61);
    CHECK(rows.front().axis_values[0] == doctest::Approx(-3.0));
    CHECK(rows.back().axis_values[0] == doctest::Approx(3.0));

    SweepGrid grid2{ModelKind::XxxDm,
                    {{"D", 0.0, 3.0, 0.1}, {"J", -3.0, 3.0, 0.1}},
                    {{"T", 0.6}}};
    const auto rows2 = run_sweep(grid2, 2);
    REQUIRE(rows2.size() == 31 * 61);
    // First axis outermost: index = iD * 61 + iJ.
    CHECK(rows2[0].axis_values[0] == doctest::Approx(0.0));
    CHECK(rows2[0].axis_values[1] == doctest::Approx(-3.0));
    CHECK(rows2[61].axis_values[0] == doctest::Approx(0.1));
    CHECK(rows2[61].axis_values[1] == doctest::Approx(-3.0));
    CHECK(rows2[61 + 5].axis_values[1] == doctest::Approx(-2.5));

    SweepGrid degenerate{ModelKind::Xxz,
                         {{"b", 0.8, 0.8, 0.1}},
                         {{"J", 1.0}, {"Jz", 0.0}, {"B", 0.0}, {"T", 0.4}}};
    CHECK(run_sweep(degenerate).size() == 1);
}

TEST_CASE("Q column is symmetric in b") {
    const auto rows = run_sweep(fig1_like_grid(), 2);
    for (std::size_t k = 0; k < 30; ++k) {
        CHECK(std::abs(rows[k].q - rows[60 - k].q) <= 1e-12);
        CHECK(std::abs(rows[k].c - rows[60 - k].c) <= 1e-12);
    }
}

TEST_CASE("sweep output does not depend on the thread count") {
    SweepGrid grid{ModelKind::Xxz,
                   {{"b", -2.0, 2.0, 0.25}, {"T", 0.2, 1.4, 0.3}},
                   {{"J", 1.0}, {"Jz", 0.4}, {"B", 0.5}}};
    const auto serial = run_sweep(grid, 1);
    const auto parallel = run_sweep(grid, 8);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].q == parallel[i].q);
        CHECK(serial[i].c == parallel[i].c);
        CHECK(serial[i].log_z == parallel[i].log_z);
    }
}

TEST_CASE("csv format: header, digits, line endings, round trip") {
    SweepGrid grid{ModelKind::Xxz,
                   {{"b", 0.8, 0.8, 0.1}},
                   {{"J", 1.0}, {"Jz", 0.0}, {"B", 0.0}, {"T", 0.4}}};
    const auto table = to_table(grid, run_sweep(grid));
    std::ostringstream os;
    emit_csv(table, os);
    const std::string text = os.str();

    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');

    std::istringstream is(text);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "b,Q,C,logZ");

    const auto fields = split(row, ',');
    REQUIRE(fields.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const double parsed = std::stod(fields[i]);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", parsed);
        CHECK(fields[i] == buf);  // parsing and re-rendering is the identity
        CHECK(parsed == doctest::Approx(table.rows[0][i]).epsilon(1e-12));
    }

    Table empty;
    empty.columns = {"a"};
    std::ostringstream sink;
    CHECK_THROWS_AS(emit_csv(empty, sink), InvalidInput);
}

TEST_CASE("figure presets produce the advertised grids") {
    CHECK_THROWS_AS(figure_preset("fig7"), InvalidInput);
    CHECK_THROWS_AS(figure_preset(""), InvalidInput);

    const auto fig1 = figure_preset("fig1");
    REQUIRE(fig1.size() == 4);
    for (const auto& panel : fig1) {
        REQUIRE(panel.grid.has_value());
        const auto rows = run_sweep(*panel.grid, 2);
        CHECK(rows.size() == expected_rows(panel.grid->axes));
    }

    const auto fig2 = figure_preset("fig2");
    REQUIRE(fig2.size() == 3);
    CHECK(fig2[0].label == "Jz0");

    const auto fig3 = figure_preset("fig3");
    REQUIRE(fig3.size() == 2);
    CHECK(fig3[0].grid->axes.size() == 2);
    CHECK(fig3[0].grid->axes[0].name == "B");
    CHECK(fig3[0].grid->axes[1].name == "T");
    CHECK(fig3[0].grid->axes[1].start > 0.0);

    const auto fig4 = figure_preset("fig4");
    REQUIRE(fig4.size() == 1);
    CHECK(expected_rows(fig4[0].grid->axes) == run_sweep(*fig4[0].grid, 2).size());

    const auto fig6 = figure_preset("fig6");
    REQUIRE(fig6.size() == 1);
    CHECK(fig6[0].grid->model == ModelKind::XxxDm);
    CHECK(expected_rows(fig6[0].grid->axes) == std::size_t{31 * 61});
}

TEST_CASE("fig1 panels: Q even in b and non-increasing in |b|") {
    for (const auto& panel : figure_preset("fig1")) {
        const auto rows = run_sweep(*panel.grid, 2);
        REQUIRE(rows.size() == 121);
        for (std::size_t k = 0; k < 60; ++k)
            CHECK(std::abs(rows[k].q - rows[120 - k].q) <= 1e-12);
        for (std::size_t i = 60; i + 1 < rows.size(); ++i)
            CHECK(rows[i + 1].q <= rows[i].q + 1e-12);
    }
}

TEST_CASE("fig5 panel: columns and the concurrence threshold") {
    const auto fig5 = figure_preset("fig5");
    REQUIRE(fig5.size() == 1);
    REQUIRE(fig5[0].x_axis.has_value());
    const Table t = run_panel(fig5[0], 2);
    REQUIRE(t.columns.size() == 3);
    CHECK(t.columns[0] == "x");
    CHECK(t.columns[1] == "Q");
    CHECK(t.columns[2] == "C");
    CHECK(t.rows.size() == 101);
    for (const auto& row : t.rows) {
        if (row[0] <= 1.316) CHECK(row[2] == 0.0);
        if (row[0] >= 1.32) CHECK(row[2] > 0.0);
    }
}

TEST_CASE("fig6 grid contains a J-asymmetry witness") {
    const auto fig6 = figure_preset("fig6");
    const auto rows = run_sweep(*fig6[0].grid, 2);
    bool found = false;
    for (std::size_t i_d = 0; i_d < 31 && !found; ++i_d)
        for (std::size_t i_j = 31; i_j < 61 && !found; ++i_j) {  // J > 0 side
            const auto& pos = rows[i_d * 61 + i_j];
            const auto& neg = rows[i_d * 61 + (60 - i_j)];
            if (pos.c > 0.1 && neg.c == 0.0) found = true;
        }
    CHECK(found);
}

TEST_CASE("verification is deterministic and passes") {
    VerifyOptions opt;
    opt.seed = 42;
    opt.threads = 1;
    const auto serial = verify_oracles(opt);
    CHECK(serial.passed);
    CHECK(serial.xxz_q_dev <= 1e-9);
    CHECK(serial.xxz_c_dev <= 1e-9);
    CHECK(serial.dm_q_dev <= 1e-9);
    CHECK(serial.dm_c_dev <= 1e-9);

    opt.threads = 8;
    const auto parallel = verify_oracles(opt);
    CHECK(serial.report == parallel.report);

    MESSAGE("verify report:\n", serial.report);
}

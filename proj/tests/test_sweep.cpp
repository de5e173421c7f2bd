#include "udq/sweep.hpp"

#include "udq/csv.hpp"
#include "udq/errors.hpp"
#include "udq/qfi.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace udq;
using namespace udq::sweep;

namespace {

constexpr double kPi = 3.14159265358979323846;

GridSpec small_unruh_grid() {
    GridSpec g;
    g.axes = {Axis{"r", 0.0, kPi / 4.0, 3}, Axis{"theta", 0.4, 2.0, 4}};
    g.fixed = {{"phi", kPi / 4.0}};
    g.quantity = Quantity::Ftheta;
    g.regime = Regime::Unruh;
    return g;
}

std::string render_csv(const GridSpec& g, int workers) {
    std::ostringstream os;
    write_rows_csv(os, g, run_sweep(g, workers));
    return os.str();
}

}  // namespace

TEST_CASE("axis_point hits both endpoints exactly") {
    const Axis ax{"r", 0.0, kPi / 4.0, 60};
    CHECK(axis_point(ax, 0) == 0.0);
    CHECK(axis_point(ax, 59) == kPi / 4.0);
    for (int i = 1; i < 60; ++i) {
        CHECK(axis_point(ax, i) > axis_point(ax, i - 1));
    }
    const Axis mid{"s", -1.0, 1.0, 3};
    CHECK(axis_point(mid, 1) == 0.0);
}

TEST_CASE("grid validation rejects malformed specs") {
    SUBCASE("no axes") {
        GridSpec g = small_unruh_grid();
        g.axes.clear();
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("three axes") {
        GridSpec g = small_unruh_grid();
        g.axes.push_back(Axis{"phi", 0.0, 1.0, 2});
        g.fixed.clear();
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("single-point axis") {
        GridSpec g = small_unruh_grid();
        g.axes[0].count = 1;
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("axis foreign to the regime") {
        GridSpec g = small_unruh_grid();
        g.axes[1].name = "t";
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("axis duplicated in fixed") {
        GridSpec g = small_unruh_grid();
        g.fixed["r"] = 0.1;
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("both axes share a name") {
        GridSpec g = small_unruh_grid();
        g.axes[1].name = "r";
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("unknown fixed parameter") {
        GridSpec g = small_unruh_grid();
        g.fixed["bogus"] = 1.0;
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("uncovered parameter") {
        GridSpec g = small_unruh_grid();
        g.fixed.clear();
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
    SUBCASE("non-finite axis bound") {
        GridSpec g = small_unruh_grid();
        g.axes[0].stop = std::nan("");
        CHECK_THROWS_AS(run_sweep(g), DomainError);
    }
}

TEST_CASE("figure presets carry the documented grids") {
    for (int id = 1; id <= 10; ++id) {
        CHECK(figure_panels(id).size() == 2);
    }
    CHECK_THROWS_AS(figure_preset(0), UnknownFigure);
    CHECK_THROWS_AS(figure_preset(11), UnknownFigure);

    const GridSpec f1 = figure_preset(1);
    REQUIRE(f1.axes.size() == 1);
    CHECK(f1.axes[0].name == "r");
    CHECK(f1.axes[0].count == 60);
    CHECK(f1.axes[0].stop == doctest::Approx(kPi / 4.0));
    CHECK(f1.quantity == Quantity::Ftheta);
    CHECK(f1.regime == Regime::Unruh);
    CHECK(f1.fixed.at("theta") == doctest::Approx(kPi / 2.0));

    const GridSpec f1b = figure_panels(1)[1];
    REQUIRE(f1b.axes.size() == 2);
    CHECK(f1b.axes[0].name == "r");
    CHECK(f1b.axes[1].name == "theta");
    CHECK(f1b.quantity == Quantity::Fphi);

    const GridSpec f2 = figure_preset(2);
    CHECK(f2.regime == Regime::UnruhQnd);
    REQUIRE(f2.axes.size() == 2);
    CHECK(f2.axes[0].name == "t");
    CHECK(f2.axes[0].stop == doctest::Approx(10.0));
    CHECK(f2.axes[1].name == "r");
    CHECK(f2.fixed.at("T") == doctest::Approx(0.5));
    CHECK(f2.fixed.at("s") == doctest::Approx(0.5));
    CHECK(f2.fixed.at("omega0") == doctest::Approx(1.0));
    CHECK(f2.fixed.at("omegac") == doctest::Approx(100.0));

    const GridSpec f5 = figure_preset(5);
    CHECK(f5.regime == Regime::UnruhSgad);
    REQUIRE(f5.axes.size() == 2);
    CHECK(f5.axes[0].name == "T");
    CHECK(f5.axes[0].stop == doctest::Approx(3.0));
    CHECK(f5.axes[1].name == "s");
    CHECK(f5.axes[1].start == doctest::Approx(-2.0));
    CHECK(f5.fixed.at("t") == doctest::Approx(2.0));
    CHECK(f5.fixed.at("omega0") == doctest::Approx(0.1));
    CHECK(f5.fixed.at("r") == doctest::Approx(kPi / 8.0));

    // Skew figures reuse the Fisher grids with the skew quantities.
    CHECK(figure_preset(6).quantity == Quantity::Stheta);
    CHECK(figure_panels(6)[1].quantity == Quantity::Sphi);
    CHECK(figure_preset(7).quantity == Quantity::Stheta);
    CHECK(figure_preset(7).regime == Regime::UnruhQnd);
    CHECK(figure_panels(10)[1].quantity == Quantity::Sphi);
    CHECK(figure_preset(4).regime == Regime::UnruhSgad);
    CHECK(figure_preset(4).quantity == Quantity::Ftheta);
}

TEST_CASE("run_sweep walks the grid row-major and matches direct evaluation") {
    const GridSpec g = small_unruh_grid();
    const auto rows = run_sweep(g);
    REQUIRE(rows.size() == 12);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            const SweepRow& row = rows[std::size_t(i * 4 + j)];
            REQUIRE(row.axis_values.size() == 2);
            CHECK(row.axis_values[0] == axis_point(g.axes[0], i));
            CHECK(row.axis_values[1] == axis_point(g.axes[1], j));
            REQUIRE(row.values.size() == 1);
            CHECK(row.flag.empty());
            CHECK_FALSE(row.residual.has_value());

            std::map<std::string, double> point = g.fixed;
            point["r"] = row.axis_values[0];
            point["theta"] = row.axis_values[1];
            const qfi::StatePath sp = path_at(g, point);
            const BlochVector z = qfi::path_bloch(sp);
            const BlochVector dz = qfi::path_derivative(sp, qfi::ParamTag::Theta);
            CHECK(row.values[0] ==
                  qfi::clamp_report(qfi::fisher_bloch(z, dz)));
        }
    }
}

TEST_CASE("route Both carries closed, generic and their distance") {
    GridSpec g = figure_preset(2);
    g.axes[0].count = 4;
    g.axes[1].count = 3;
    g.route = RouteSel::Both;
    const auto rows = run_sweep(g);
    REQUIRE(rows.size() == 12);
    for (const SweepRow& row : rows) {
        REQUIRE(row.values.size() == 2);
        REQUIRE(row.residual.has_value());
        CHECK(*row.residual <= 1e-8);
        CHECK(std::abs(std::abs(row.values[0] - row.values[1]) - *row.residual) <=
              1e-15);
    }
}

TEST_CASE("sweeps flag failing points instead of aborting") {
    GridSpec g;
    g.axes = {Axis{"r", 0.0, 1.2, 5}};
    g.fixed = {{"theta", kPi / 4.0}, {"phi", kPi / 4.0}};
    g.regime = Regime::Unruh;
    const auto rows = run_sweep(g);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].flag.empty());
    CHECK(rows[1].flag.empty());
    CHECK(rows[2].flag.empty());
    CHECK(rows[3].flag == "domain_error");
    CHECK(rows[4].flag == "domain_error");

    std::ostringstream os;
    write_rows_csv(os, g, rows);
    const std::string text = os.str();
    CHECK(text.find("!domain_error") != std::string::npos);
    // Five data lines plus the header.
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("csv headers name the axes then the value columns") {
    GridSpec g = small_unruh_grid();
    CHECK(csv_header(g) == std::vector<std::string>{"r", "theta", "F_theta"});
    g.route = RouteSel::Both;
    CHECK(csv_header(g) == std::vector<std::string>{"r", "theta", "F_theta_closed",
                                                    "F_theta_generic", "residual"});
    g.quantity = Quantity::Sphi;
    g.route = RouteSel::Generic;
    CHECK(csv_header(g) == std::vector<std::string>{"r", "theta", "S_phi"});
    CHECK(std::string(quantity_column(Quantity::Fphi)) == "F_phi");
    CHECK(std::string(quantity_column(Quantity::Stheta)) == "S_theta");
}

TEST_CASE("format_double round-trips every value it prints") {
    for (double v : {0.1, 1.0 / 3.0, kPi, 6.02e23, -1e-300, 0.0, 42.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("sweep output is identical across reruns and worker counts") {
    GridSpec g = figure_preset(5);
    g.axes[0].count = 8;
    g.axes[1].count = 7;
    const std::string serial = render_csv(g, 1);
    CHECK(render_csv(g, 1) == serial);
    CHECK(render_csv(g, 4) == serial);
    CHECK(render_csv(g, 3) == serial);

    GridSpec both = g;
    both.route = RouteSel::Both;
    CHECK(render_csv(both, 1) == render_csv(both, 5));
}

TEST_CASE("trend_checks covers every documented trend") {
    const auto trends = trend_checks();
    std::set<std::string> ids;
    for (const TrendResult& tr : trends) ids.insert(tr.id);

    const std::set<std::string> expected = {
        "unruh-ftheta-decreasing-r",  "qnd-ftheta-stable-small-r",
        "qnd-fphi-decreasing-t",      "sgad-fphi-decreasing-t",
        "qnd-fisher-decreasing-T",    "sgad-fisher-decreasing-T",
        "qnd-ftheta-decreasing-t",    "sgad-ftheta-decreasing-t",
        "sgad-squeezing-stabilizing"};
    CHECK(ids == expected);

    for (const TrendResult& tr : trends) {
        CAPTURE(tr.id);
        CAPTURE(tr.detail);
        CHECK(std::isfinite(tr.magnitude));
        if (tr.hard) {
            CHECK(tr.pass);
        }
    }
}

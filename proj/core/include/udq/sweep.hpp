// sweep.hpp — Parameter-grid engine: generic 1- or 2-axis sweeps, the ten
// bundled figure presets, and checks of the qualitative trends the figures
// are read for.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "udq/qfi.hpp"

namespace udq::sweep {

enum class Quantity { Ftheta, Fphi, Stheta, Sphi };
enum class Regime { Unruh, UnruhQnd, UnruhSgad };
enum class RouteSel { ClosedForm, Generic, Both };

struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
};

// Parameter names: r, theta, phi always; t, T, s, a, omega0, omegac, gamma0
// for the QND regime; t, T, s, phis, omega0, gamma0 for SGAD. Every name not
// swept must appear in fixed.
struct GridSpec {
    std::vector<Axis> axes;  // 1 or 2; the first axis is the outer (row) loop
    std::map<std::string, double> fixed;
    Quantity quantity = Quantity::Ftheta;
    Regime regime = Regime::Unruh;
    RouteSel route = RouteSel::Generic;
    channels::QndMode qnd_mode = channels::QndMode::Paper;
};

struct SweepRow {
    std::vector<double> axis_values;
    std::vector<double> values;  // one per route; [closed, generic] for Both
    std::optional<double> residual;
    std::string flag;  // empty on success, else an error code
};

// Coordinate i along ax, by the exact expression every sweep path uses.
double axis_point(const Axis& ax, int i);

// State-and-channel stack at one grid point; `point` must bind every
// parameter name of the regime.
qfi::StatePath path_at(const GridSpec& g, const std::map<std::string, double>& point);

// One row per grid point in row-major axis order. Deterministic and
// byte-stable regardless of worker count (workers <= 0: one per hardware
// thread). A point that throws becomes a flagged row; the sweep never aborts.
// Throws DomainError only for an invalid GridSpec (bad axes, missing names).
std::vector<SweepRow> run_sweep(const GridSpec& g, int workers = 0);

// "F_theta", "F_phi", "S_theta", "S_phi".
const char* quantity_column(Quantity q);

std::vector<std::string> csv_header(const GridSpec& g);

// Header plus one line per row; flagged rows carry "!<code>" in each value
// cell so downstream numeric parsers trip loudly rather than silently.
void write_rows_csv(std::ostream& os, const GridSpec& g, const std::vector<SweepRow>& rows);

// Panel (a) of figure <id>; throws UnknownFigure outside 1..10.
GridSpec figure_preset(int id);

// Both panels, in order (a), (b).
std::vector<GridSpec> figure_panels(int id);

struct TrendResult {
    std::string id;
    bool pass = false;
    bool hard = true;  // soft trends are recorded but never fail a run
    double magnitude = 0.0;  // size of the worst violation, 0 when clean
    std::string detail;
};

// Quantitative reads of the trends described alongside the figures:
// monotone Fisher decay in r, QND stability at small r, decay in t and T,
// and the (soft) squeezing-stabilization claim.
std::vector<TrendResult> trend_checks();

}  // namespace udq::sweep

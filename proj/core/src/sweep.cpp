#include "udq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "udq/csv.hpp"
#include "udq/errors.hpp"

namespace udq::sweep {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string>& regime_names(Regime regime) {
    static const std::vector<std::string> unruh = {"r", "theta", "phi"};
    static const std::vector<std::string> qnd = {"r",      "theta", "phi",    "t",     "T",
                                                 "s",      "a",     "omega0", "omegac", "gamma0"};
    static const std::vector<std::string> sgad = {"r", "theta", "phi",    "t",
                                                  "T", "s",     "phis",   "omega0", "gamma0"};
    switch (regime) {
        case Regime::Unruh: return unruh;
        case Regime::UnruhQnd: return qnd;
        default: return sgad;
    }
}

void validate(const GridSpec& g) {
    if (g.axes.empty() || g.axes.size() > 2) {
        throw DomainError("grid needs 1 or 2 axes, got " + std::to_string(g.axes.size()));
    }
    const auto& names = regime_names(g.regime);
    auto known = [&names](const std::string& n) {
        return std::find(names.begin(), names.end(), n) != names.end();
    };
    for (const Axis& ax : g.axes) {
        if (ax.count < 2) throw DomainError("axis " + ax.name + " needs at least 2 points");
        if (!std::isfinite(ax.start) || !std::isfinite(ax.stop)) {
            throw DomainError("axis " + ax.name + " has non-finite bounds");
        }
        if (!known(ax.name)) {
            throw DomainError("axis " + ax.name + " is not a parameter of this regime");
        }
        if (g.fixed.count(ax.name)) throw DomainError("axis " + ax.name + " also appears in fixed");
    }
    if (g.axes.size() == 2 && g.axes[0].name == g.axes[1].name) {
        throw DomainError("both axes named " + g.axes[0].name);
    }
    for (const auto& [key, value] : g.fixed) {
        if (!known(key)) throw DomainError("fixed parameter " + key + " is not a parameter of this regime");
        if (!std::isfinite(value)) throw DomainError("fixed parameter " + key + " is not finite");
    }
    for (const std::string& name : names) {
        const bool on_axis = std::any_of(g.axes.begin(), g.axes.end(),
                                         [&name](const Axis& ax) { return ax.name == name; });
        if (!on_axis && !g.fixed.count(name)) {
            throw DomainError("parameter " + name + " is neither swept nor fixed");
        }
    }
}

qfi::ParamTag tag_of(Quantity q) {
    return (q == Quantity::Ftheta || q == Quantity::Stheta) ? qfi::ParamTag::Theta
                                                            : qfi::ParamTag::Phi;
}

bool is_skew(Quantity q) { return q == Quantity::Stheta || q == Quantity::Sphi; }

}  // namespace

// Single expression used on every code path, so 1-worker and N-worker runs
// produce bit-identical grid coordinates.
double axis_point(const Axis& ax, int i) {
    return ax.start + (ax.stop - ax.start) * static_cast<double>(i) / static_cast<double>(ax.count - 1);
}

qfi::StatePath path_at(const GridSpec& g, const std::map<std::string, double>& point) {
    qfi::StatePath sp;
    sp.theta = point.at("theta");
    sp.phi = point.at("phi");
    sp.unruh.r = point.at("r");
    sp.qnd_mode = g.qnd_mode;
    if (g.regime == Regime::UnruhQnd) {
        channels::QndParams q;
        q.t = point.at("t");
        q.T = point.at("T");
        q.s = point.at("s");
        q.a = point.at("a");
        q.omega0 = point.at("omega0");
        q.omegac = point.at("omegac");
        q.gamma0 = point.at("gamma0");
        sp.qnd = q;
    } else if (g.regime == Regime::UnruhSgad) {
        channels::SgadParams q;
        q.t = point.at("t");
        q.T = point.at("T");
        q.s = point.at("s");
        q.phis = point.at("phis");
        q.omega0 = point.at("omega0");
        q.gamma0 = point.at("gamma0");
        sp.sgad = q;
    }
    return sp;
}

namespace {

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const BranchError*>(&e)) return "branch_error";
    if (dynamic_cast<const SingularState*>(&e)) return "singular_state";
    if (dynamic_cast<const CompletenessViolation*>(&e)) return "completeness_violation";
    if (dynamic_cast<const NormViolation*>(&e)) return "norm_violation";
    if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
    return "error";
}

double generic_value(const qfi::StatePath& sp, qfi::ParamTag tag, bool skew) {
    const BlochVector zeta = qfi::path_bloch(sp);
    const BlochVector dzeta = qfi::path_derivative(sp, tag);
    return skew ? qfi::skew_bloch(zeta, dzeta) : qfi::fisher_bloch(zeta, dzeta);
}

SweepRow evaluate_index(const GridSpec& g, std::size_t index) {
    SweepRow row;
    std::map<std::string, double> point = g.fixed;
    if (g.axes.size() == 1) {
        const double v = axis_point(g.axes[0], static_cast<int>(index));
        row.axis_values = {v};
        point[g.axes[0].name] = v;
    } else {
        const auto inner = static_cast<std::size_t>(g.axes[1].count);
        const double v0 = axis_point(g.axes[0], static_cast<int>(index / inner));
        const double v1 = axis_point(g.axes[1], static_cast<int>(index % inner));
        row.axis_values = {v0, v1};
        point[g.axes[0].name] = v0;
        point[g.axes[1].name] = v1;
    }
    const qfi::ParamTag tag = tag_of(g.quantity);
    const bool skew = is_skew(g.quantity);
    try {
        const qfi::StatePath sp = path_at(g, point);
        if (g.route == RouteSel::ClosedForm || g.route == RouteSel::Both) {
            row.values.push_back(qfi::clamp_report(qfi::closed_value(sp, tag, skew)));
        }
        if (g.route == RouteSel::Generic || g.route == RouteSel::Both) {
            row.values.push_back(qfi::clamp_report(generic_value(sp, tag, skew)));
        }
        if (g.route == RouteSel::Both) {
            row.residual = std::abs(row.values[0] - row.values[1]);
        }
    } catch (const std::exception& e) {
        row.values.clear();
        row.residual.reset();
        row.flag = error_code(e);
        return row;
    }
    for (double v : row.values) {
        if (!std::isfinite(v)) {
            row.values.clear();
            row.residual.reset();
            row.flag = "nonfinite";
            break;
        }
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const GridSpec& g, int workers) {
    validate(g);
    std::size_t total = 1;
    for (const Axis& ax : g.axes) total *= static_cast<std::size_t>(ax.count);
    std::vector<SweepRow> rows(total);

    std::size_t pool_size = workers > 0 ? static_cast<std::size_t>(workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    pool_size = std::min(pool_size, total);

    auto fill = [&g, &rows](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) rows[i] = evaluate_index(g, i);
    };

    if (pool_size <= 1) {
        fill(0, total);
        return rows;
    }
    // Static contiguous blocks: each row is written exactly once, by a
    // position that does not depend on scheduling.
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    const std::size_t chunk = (total + pool_size - 1) / pool_size;
    for (std::size_t k = 0; k < pool_size; ++k) {
        const std::size_t lo = k * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(fill, lo, hi);
    }
    for (std::thread& th : pool) th.join();
    return rows;
}

const char* quantity_column(Quantity q) {
    switch (q) {
        case Quantity::Ftheta: return "F_theta";
        case Quantity::Fphi: return "F_phi";
        case Quantity::Stheta: return "S_theta";
        default: return "S_phi";
    }
}

std::vector<std::string> csv_header(const GridSpec& g) {
    std::vector<std::string> cols;
    for (const Axis& ax : g.axes) cols.push_back(ax.name);
    const std::string col = quantity_column(g.quantity);
    if (g.route == RouteSel::Both) {
        cols.push_back(col + "_closed");
        cols.push_back(col + "_generic");
        cols.push_back("residual");
    } else {
        cols.push_back(col);
    }
    return cols;
}

void write_rows_csv(std::ostream& os, const GridSpec& g, const std::vector<SweepRow>& rows) {
    write_csv_line(os, csv_header(g));
    const std::size_t value_cells = g.route == RouteSel::Both ? 3 : 1;
    std::vector<std::string> cells;
    for (const SweepRow& row : rows) {
        cells.clear();
        for (double v : row.axis_values) cells.push_back(format_double(v));
        if (row.flag.empty()) {
            for (double v : row.values) cells.push_back(format_double(v));
            if (row.residual) cells.push_back(format_double(*row.residual));
        } else {
            for (std::size_t k = 0; k < value_cells; ++k) cells.push_back("!" + row.flag);
        }
        write_csv_line(os, cells);
    }
}

// ------------------------------ figure presets -------------------------------

namespace {

Axis axis_r() { return {"r", 0.0, kPi / 4.0, 60}; }
Axis axis_theta() { return {"theta", 0.0, 2.0 * kPi, 60}; }
Axis axis_t() { return {"t", 0.0, 10.0, 60}; }
Axis axis_temp() { return {"T", 0.0, 3.0, 60}; }
Axis axis_s() { return {"s", -2.0, 2.0, 60}; }

GridSpec qnd_time_grid() {
    GridSpec g;
    g.axes = {axis_t(), axis_r()};
    g.fixed = {{"theta", kPi / 4.0}, {"phi", kPi / 4.0}, {"a", 0.0},      {"T", 0.5},
               {"s", 0.5},           {"omega0", 1.0},    {"omegac", 100.0}, {"gamma0", 0.1}};
    g.regime = Regime::UnruhQnd;
    return g;
}

GridSpec qnd_bath_grid() {
    GridSpec g;
    g.axes = {axis_temp(), axis_s()};
    g.fixed = {{"r", kPi / 8.0}, {"theta", kPi / 4.0}, {"phi", kPi / 4.0},  {"a", 0.0},
               {"t", 2.0},       {"omega0", 1.0},      {"omegac", 100.0}, {"gamma0", 0.1}};
    g.regime = Regime::UnruhQnd;
    return g;
}

GridSpec sgad_time_grid() {
    GridSpec g;
    g.axes = {axis_t(), axis_r()};
    g.fixed = {{"theta", kPi / 4.0}, {"phi", kPi / 4.0}, {"phis", 0.0}, {"T", 0.5},
               {"s", 0.5},           {"omega0", 0.1},    {"gamma0", 0.1}};
    g.regime = Regime::UnruhSgad;
    return g;
}

GridSpec sgad_bath_grid() {
    GridSpec g;
    g.axes = {axis_temp(), axis_s()};
    g.fixed = {{"r", kPi / 8.0}, {"theta", kPi / 4.0}, {"phi", kPi / 4.0}, {"phis", 0.0},
               {"t", 2.0},       {"omega0", 0.1},      {"gamma0", 0.1}};
    g.regime = Regime::UnruhSgad;
    return g;
}

std::vector<GridSpec> panels_of(int id) {
    GridSpec a;
    switch (id) {
        case 1: {
            a.axes = {axis_r()};
            a.fixed = {{"theta", kPi / 2.0}, {"phi", kPi / 4.0}};
            a.quantity = Quantity::Ftheta;
            GridSpec b;
            b.axes = {axis_r(), axis_theta()};
            b.fixed = {{"phi", kPi / 4.0}};
            b.quantity = Quantity::Fphi;
            return {a, b};
        }
        case 6: {
            a.axes = {axis_r(), axis_theta()};
            a.fixed = {{"phi", kPi / 4.0}};
            a.quantity = Quantity::Stheta;
            GridSpec b = a;
            b.quantity = Quantity::Sphi;
            return {a, b};
        }
        case 2:
        case 7: a = qnd_time_grid(); break;
        case 3:
        case 8: a = qnd_bath_grid(); break;
        case 4:
        case 9: a = sgad_time_grid(); break;
        case 5:
        case 10: a = sgad_bath_grid(); break;
        default:
            throw UnknownFigure("figure id " + std::to_string(id) + " (valid: 1..10)");
    }
    const bool skew = id >= 6;
    a.quantity = skew ? Quantity::Stheta : Quantity::Ftheta;
    GridSpec b = a;
    b.quantity = skew ? Quantity::Sphi : Quantity::Fphi;
    return {a, b};
}

}  // namespace

GridSpec figure_preset(int id) { return panels_of(id).front(); }

std::vector<GridSpec> figure_panels(int id) { return panels_of(id); }

// ------------------------------- trend checks --------------------------------

namespace {

// Collapses one axis of a 2-axis grid to the pinned value, leaving a 1-axis
// sweep along `keep`.
GridSpec row_of(GridSpec g, const std::string& keep, const std::map<std::string, double>& pins) {
    std::vector<Axis> kept;
    for (const Axis& ax : g.axes) {
        if (ax.name == keep) {
            kept.push_back(ax);
        } else {
            g.fixed[ax.name] = pins.at(ax.name);
        }
    }
    g.axes = kept;
    return g;
}

std::vector<double> series_values(const GridSpec& g) {
    std::vector<double> out;
    for (const SweepRow& row : run_sweep(g)) {
        if (!row.flag.empty()) throw DomainError("flagged point (" + row.flag + ") in trend grid");
        out.push_back(row.values.back());
    }
    return out;
}

double max_increase(const std::vector<double>& y) {
    double worst = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) worst = std::max(worst, y[i] - y[i - 1]);
    return worst;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

constexpr double kMonotoneSlack = 1e-12;

}  // namespace

std::vector<TrendResult> trend_checks() {
    std::vector<TrendResult> out;
    auto add = [&out](const char* id, bool hard, auto&& body) {
        TrendResult tr;
        tr.id = id;
        tr.hard = hard;
        try {
            body(tr);
        } catch (const std::exception& e) {
            tr.pass = false;
            tr.detail = std::string("evaluation failed: ") + e.what();
        }
        out.push_back(std::move(tr));
    };

    add("unruh-ftheta-decreasing-r", true, [](TrendResult& tr) {
        const std::vector<double> y = series_values(figure_preset(1));
        double top = -1.0;
        for (std::size_t i = 1; i < y.size(); ++i) top = std::max(top, y[i] - y[i - 1]);
        tr.pass = top < 0.0;
        tr.magnitude = std::max(0.0, top);
        tr.detail = "F_theta over r in [0, pi/4] at theta=pi/2, largest step " + fmt(top);
    });

    add("qnd-ftheta-stable-small-r", true, [](TrendResult& tr) {
        const GridSpec g = row_of(figure_panels(2)[0], "t", {{"r", 0.1}});
        const std::vector<double> y = series_values(g);
        const double hi = *std::max_element(y.begin(), y.end());
        const double lo = *std::min_element(y.begin(), y.end());
        const double rel = (hi - lo) / hi;
        tr.pass = rel < 0.05;
        tr.magnitude = rel;
        tr.detail = "F_theta varies " + fmt(100.0 * rel) + "% over t in [0,10] at r=0.1 (limit 5%)";
    });

    add("qnd-fphi-decreasing-t", true, [](TrendResult& tr) {
        double worst = 0.0;
        for (double r : {kPi / 8.0, kPi / 4.0}) {
            const GridSpec g = row_of(figure_panels(2)[1], "t", {{"r", r}});
            worst = std::max(worst, max_increase(series_values(g)));
        }
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_phi over t at r in {pi/8, pi/4}, largest increase " + fmt(worst);
    });

    add("sgad-fphi-decreasing-t", true, [](TrendResult& tr) {
        double worst = 0.0;
        for (double r : {kPi / 8.0, kPi / 4.0}) {
            const GridSpec g = row_of(figure_panels(4)[1], "t", {{"r", r}});
            worst = std::max(worst, max_increase(series_values(g)));
        }
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_phi over t at r in {pi/8, pi/4}, largest increase " + fmt(worst);
    });

    add("qnd-fisher-decreasing-T", true, [](TrendResult& tr) {
        double worst = 0.0;
        for (const GridSpec& panel : figure_panels(3)) {
            const GridSpec g = row_of(panel, "T", {{"s", 0.0}});
            worst = std::max(worst, max_increase(series_values(g)));
        }
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_theta and F_phi over T in [0,3] at s=0, largest increase " + fmt(worst);
    });

    add("sgad-fisher-decreasing-T", true, [](TrendResult& tr) {
        double worst = 0.0;
        for (const GridSpec& panel : figure_panels(5)) {
            const GridSpec g = row_of(panel, "T", {{"s", 0.0}});
            worst = std::max(worst, max_increase(series_values(g)));
        }
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_theta and F_phi over T in [0,3] at s=0, largest increase " + fmt(worst);
    });

    add("qnd-ftheta-decreasing-t", false, [](TrendResult& tr) {
        const GridSpec g = row_of(figure_panels(2)[0], "t", {{"r", kPi / 8.0}});
        const double worst = max_increase(series_values(g));
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_theta over t at r=pi/8, largest increase " + fmt(worst);
    });

    add("sgad-ftheta-decreasing-t", false, [](TrendResult& tr) {
        const GridSpec g = row_of(figure_panels(4)[0], "t", {{"r", kPi / 8.0}});
        const double worst = max_increase(series_values(g));
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "F_theta over t at r=pi/8, largest increase " + fmt(worst);
    });

    add("sgad-squeezing-stabilizing", false, [](TrendResult& tr) {
        const GridSpec g = row_of(figure_panels(5)[0], "s", {{"T", 1.0}});
        std::vector<double> x, y;
        for (const SweepRow& row : run_sweep(g)) {
            if (!row.flag.empty()) throw DomainError("flagged point (" + row.flag + ")");
            x.push_back(row.axis_values[0]);
            y.push_back(row.values.back());
        }
        std::vector<double> slopes;
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (x[i - 1] >= 1.0) slopes.push_back(std::abs((y[i] - y[i - 1]) / (x[i] - x[i - 1])));
        }
        const double worst = max_increase(slopes);
        tr.pass = worst <= kMonotoneSlack;
        tr.magnitude = tr.pass ? 0.0 : worst;
        tr.detail = "|dF_theta/ds| for s>1 at T=1, largest slope increase " + fmt(worst);
    });

    return out;
}

}  // namespace udq::sweep

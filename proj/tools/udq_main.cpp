// udq — CSV figure data, ad-hoc parameter sweeps, self-checks, and single-point
// evaluation for the Unruh-channel metrology library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "udq/channels.hpp"
#include "udq/csv.hpp"
#include "udq/errors.hpp"
#include "udq/qfi.hpp"
#include "udq/sweep.hpp"
#include "udq/tolerances.hpp"
#include "udq/verify.hpp"

namespace fs = std::filesystem;
using namespace udq;

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
    std::string out = ".";
    std::string qnd_mode = "paper";
    std::string route = "generic";
    std::vector<std::string> tolerance_overrides;
    int workers = 0;
    int points = 0;
};

channels::QndMode parse_mode(const std::string& s) {
    return s == "kraus" ? channels::QndMode::Kraus : channels::QndMode::Paper;
}

sweep::RouteSel parse_route(const std::string& s) {
    if (s == "closed") return sweep::RouteSel::ClosedForm;
    if (s == "both") return sweep::RouteSel::Both;
    if (s == "generic") return sweep::RouteSel::Generic;
    throw DomainError("unknown route '" + s + "' (closed | generic | both)");
}

sweep::Regime parse_regime(const std::string& s) {
    if (s == "unruh") return sweep::Regime::Unruh;
    if (s == "qnd") return sweep::Regime::UnruhQnd;
    if (s == "sgad") return sweep::Regime::UnruhSgad;
    throw DomainError("unknown regime '" + s + "' (unruh | qnd | sgad)");
}

sweep::Quantity parse_quantity(const std::string& s) {
    if (s == "Ftheta") return sweep::Quantity::Ftheta;
    if (s == "Fphi") return sweep::Quantity::Fphi;
    if (s == "Stheta") return sweep::Quantity::Stheta;
    if (s == "Sphi") return sweep::Quantity::Sphi;
    throw DomainError("unknown quantity '" + s + "' (Ftheta | Fphi | Stheta | Sphi)");
}

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw DomainError("cannot parse number for '" + key + "': '" + text + "'");
    }
}

void apply_tolerance_overrides(const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw DomainError("tolerance override must look like key=value, got '" + item + "'");
        }
        set_tolerance(tolerances(), item.substr(0, eq), parse_number(item, item.substr(eq + 1)));
    }
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int write_rows_file(const fs::path& file, const sweep::GridSpec& g,
                    const std::vector<sweep::SweepRow>& rows) {
    std::ofstream os(file, std::ios::binary);
    if (!os) {
        std::cerr << "udq: cannot open " << file.string() << " for writing\n";
        return 3;
    }
    sweep::write_rows_csv(os, g, rows);
    os.flush();
    if (!os) {
        std::cerr << "udq: write failed on " << file.string() << "\n";
        return 3;
    }
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

int cmd_figure(const Options& opt, int id) {
    std::vector<sweep::GridSpec> panels = sweep::figure_panels(id);
    fs::create_directories(opt.out);
    const char suffix[2] = {'a', 'b'};
    for (std::size_t k = 0; k < panels.size(); ++k) {
        sweep::GridSpec g = panels[k];
        g.route = parse_route(opt.route);
        g.qnd_mode = parse_mode(opt.qnd_mode);
        if (opt.points >= 2) {
            for (sweep::Axis& ax : g.axes) ax.count = opt.points;
        }
        const fs::path file =
            fs::path(opt.out) / ("figure_" + std::to_string(id) + std::string(1, suffix[k]) + ".csv");
        const int rc = write_rows_file(file, g, sweep::run_sweep(g, opt.workers));
        if (rc != 0) return rc;
    }
    return 0;
}

int cmd_sweep(const Options& opt, const std::string& gridspec_path, bool route_from_cli) {
    std::ifstream in(gridspec_path);
    if (!in) {
        std::cerr << "udq: cannot open gridspec " << gridspec_path << "\n";
        return 3;
    }
    sweep::GridSpec g;
    g.qnd_mode = parse_mode(opt.qnd_mode);
    bool have_regime = false, have_quantity = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("gridspec line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key == "regime") {
            g.regime = parse_regime(value);
            have_regime = true;
        } else if (key == "quantity") {
            g.quantity = parse_quantity(value);
            have_quantity = true;
        } else if (key == "route") {
            if (!route_from_cli) g.route = parse_route(value);
        } else if (key == "axis") {
            std::vector<std::string> parts;
            std::stringstream ss(value);
            std::string part;
            while (std::getline(ss, part, ',')) parts.push_back(trimmed(part));
            if (parts.size() != 4) {
                throw DomainError("gridspec line " + std::to_string(lineno) +
                                  ": axis wants name,start,stop,count");
            }
            sweep::Axis ax;
            ax.name = parts[0];
            ax.start = parse_number("axis start", parts[1]);
            ax.stop = parse_number("axis stop", parts[2]);
            ax.count = static_cast<int>(parse_number("axis count", parts[3]));
            g.axes.push_back(ax);
        } else {
            g.fixed[key] = parse_number(key, value);
        }
    }
    if (route_from_cli) g.route = parse_route(opt.route);
    if (!have_regime || !have_quantity) {
        throw DomainError("gridspec needs both 'regime' and 'quantity' keys");
    }
    fs::create_directories(opt.out);
    return write_rows_file(fs::path(opt.out) / "sweep.csv", g, sweep::run_sweep(g, opt.workers));
}

int cmd_check(const Options& opt) {
    fs::create_directories(opt.out);
    const std::vector<verify::CheckResult> results = verify::run_all_checks(
        (fs::path(opt.out) / "check_scratch").string(), parse_mode(opt.qnd_mode));
    const fs::path report = fs::path(opt.out) / "check_report.txt";
    std::ofstream os(report, std::ios::binary);
    if (!os) {
        std::cerr << "udq: cannot open " << report.string() << " for writing\n";
        return 3;
    }
    for (const verify::CheckResult& c : results) {
        const std::string text = verify::format_check_line(c);
        os << text << "\n";
        std::cout << text << "\n";
    }
    os.flush();
    if (!os) {
        std::cerr << "udq: write failed on " << report.string() << "\n";
        return 3;
    }
    std::cout << "report: " << report.string() << "\n";
    return verify::all_hard_pass(results) ? 0 : 1;
}

struct EvalParams {
    double r = 0.0;
    double theta = kPi / 4.0;
    double phi = kPi / 4.0;
    double t = 0.0;
    double T = 0.0;
    double s = 0.0;
    double a = 0.0;
    double phis = 0.0;
    double omega0 = 1.0;
    double omegac = 100.0;
    double gamma0 = 0.0;
};

int cmd_eval(const Options& opt, const std::string& regime, const std::string& quantity,
             const EvalParams& ep, const std::string& route) {
    const sweep::Regime rg = parse_regime(regime);
    const sweep::Quantity q = parse_quantity(quantity);
    const bool skew = q == sweep::Quantity::Stheta || q == sweep::Quantity::Sphi;
    const qfi::ParamTag tag = (q == sweep::Quantity::Ftheta || q == sweep::Quantity::Stheta)
                                  ? qfi::ParamTag::Theta
                                  : qfi::ParamTag::Phi;
    qfi::StatePath sp;
    sp.theta = ep.theta;
    sp.phi = ep.phi;
    sp.unruh.r = ep.r;
    sp.qnd_mode = parse_mode(opt.qnd_mode);
    if (rg == sweep::Regime::UnruhQnd) {
        channels::QndParams p;
        p.t = ep.t;
        p.T = ep.T;
        p.s = ep.s;
        p.a = ep.a;
        p.omega0 = ep.omega0;
        p.omegac = ep.omegac;
        p.gamma0 = ep.gamma0;
        sp.qnd = p;
    } else if (rg == sweep::Regime::UnruhSgad) {
        channels::SgadParams p;
        p.t = ep.t;
        p.T = ep.T;
        p.s = ep.s;
        p.phis = ep.phis;
        p.omega0 = ep.omega0;
        p.gamma0 = ep.gamma0;
        sp.sgad = p;
    }

    const sweep::RouteSel rs = parse_route(route);
    auto generic = [&sp, tag, skew] {
        const BlochVector zeta = qfi::path_bloch(sp);
        const BlochVector dzeta = qfi::path_derivative(sp, tag);
        return skew ? qfi::skew_bloch(zeta, dzeta) : qfi::fisher_bloch(zeta, dzeta);
    };
    double value = 0.0;
    std::optional<double> residual;
    if (rs == sweep::RouteSel::ClosedForm) {
        value = qfi::closed_value(sp, tag, skew);
    } else if (rs == sweep::RouteSel::Generic) {
        value = generic();
    } else {
        const double closed = qfi::closed_value(sp, tag, skew);
        value = generic();
        residual = std::abs(closed - value);
    }
    std::cout << format_double(qfi::clamp_report(value)) << " " << route << " "
              << (residual ? format_double(*residual) : "-") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unruh-channel qubit metrology: figure data, sweeps, self-checks"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--out", opt.out, "output directory (default: UDQ_OUT or '.')")
        ->envname("UDQ_OUT");
    app.add_option("--qnd-mode", opt.qnd_mode,
                   "QND transverse-factor convention: paper (default) or kraus")
        ->check(CLI::IsMember({"paper", "kraus"}));
    app.add_option("--route", opt.route, "value route: closed, generic, or both")
        ->check(CLI::IsMember({"closed", "generic", "both"}));
    app.add_option("--tolerance", opt.tolerance_overrides,
                   "tolerance override key=value (repeatable); keys: structural, algebraic, "
                   "roundtrip, norm, pure, sld, fisher, closed, gradient");
    app.add_option("--workers", opt.workers, "worker threads for sweeps (0 = hardware)")
        ->check(CLI::Range(0, 4096));
    app.add_option("--points", opt.points, "override per-axis point count for figure presets")
        ->check(CLI::Range(2, 100000));
    app.set_config("--config", "", "flat key = value configuration file");

    CLI::App* fig = app.add_subcommand("figure", "write the CSV data behind one bundled figure");
    fig->fallthrough();
    int fig_id = 0;
    fig->add_option("id", fig_id, "figure number, 1-10")->required();

    CLI::App* sw = app.add_subcommand("sweep", "run the sweep described by a gridspec file");
    sw->fallthrough();
    std::string gridspec_path;
    sw->add_option("gridspec", gridspec_path, "flat key = value grid description")->required();

    CLI::App* chk = app.add_subcommand("check", "run the self-check battery, write a report");
    chk->fallthrough();

    CLI::App* ev = app.add_subcommand("eval", "evaluate one quantity at one parameter point");
    ev->fallthrough();
    std::string regime, quantity;
    EvalParams ep;
    ev->add_option("regime", regime, "unruh | qnd | sgad")
        ->required()
        ->check(CLI::IsMember({"unruh", "qnd", "sgad"}));
    ev->add_option("quantity", quantity, "Ftheta | Fphi | Stheta | Sphi")
        ->required()
        ->check(CLI::IsMember({"Ftheta", "Fphi", "Stheta", "Sphi"}));
    ev->add_option("--r", ep.r, "Unruh parameter, radians in [0, pi/4]")->required();
    ev->add_option("--theta", ep.theta, "state polar angle (default pi/4)");
    ev->add_option("--phi", ep.phi, "state azimuth (default pi/4)");
    ev->add_option("--t", ep.t, "interaction time");
    ev->add_option("--T", ep.T, "bath temperature");
    ev->add_option("--s", ep.s, "bath squeezing");
    ev->add_option("--a", ep.a, "squeezing time offset (qnd)");
    ev->add_option("--phis", ep.phis, "squeezing angle (sgad)");
    ev->add_option("--omega0", ep.omega0, "qubit level separation (default 1)");
    ev->add_option("--omegac", ep.omegac, "bath cutoff frequency (qnd, default 100)");
    ev->add_option("--gamma0", ep.gamma0, "system-bath coupling (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_tolerance_overrides(opt.tolerance_overrides);
        if (*fig) return cmd_figure(opt, fig_id);
        if (*sw) return cmd_sweep(opt, gridspec_path, app.count("--route") > 0);
        if (*chk) return cmd_check(opt);
        if (*ev) {
            const std::string route = app.count("--route") > 0 ? opt.route : "both";
            return cmd_eval(opt, regime, quantity, ep, route);
        }
    } catch (const UnknownFigure& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "udq: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

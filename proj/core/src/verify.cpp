#include "udq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "udq/channels.hpp"
#include "udq/errors.hpp"
#include "udq/qcore.hpp"
#include "udq/qfi.hpp"
#include "udq/sweep.hpp"
#include "udq/tolerances.hpp"

namespace udq::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

const char* level_name(Level lv) {
    switch (lv) {
        case Level::Pass: return "PASS";
        case Level::Fail: return "FAIL";
        case Level::Soft: return "SOFT";
        default: return "INFO";
    }
}

CheckResult graded(bool ok, std::string id, std::string detail) {
    return {ok ? Level::Pass : Level::Fail, std::move(id), std::move(detail)};
}

template <typename Fn>
void for_each_point(const sweep::GridSpec& g, Fn&& fn) {
    const sweep::Axis& ax0 = g.axes.at(0);
    if (g.axes.size() == 1) {
        for (int i = 0; i < ax0.count; ++i) {
            std::map<std::string, double> point = g.fixed;
            point[ax0.name] = sweep::axis_point(ax0, i);
            fn(point);
        }
        return;
    }
    const sweep::Axis& ax1 = g.axes.at(1);
    for (int i = 0; i < ax0.count; ++i) {
        for (int j = 0; j < ax1.count; ++j) {
            std::map<std::string, double> point = g.fixed;
            point[ax0.name] = sweep::axis_point(ax0, i);
            point[ax1.name] = sweep::axis_point(ax1, j);
            fn(point);
        }
    }
}

qfi::ParamTag tag_of(const sweep::GridSpec& g) {
    using sweep::Quantity;
    return (g.quantity == Quantity::Ftheta || g.quantity == Quantity::Stheta)
               ? qfi::ParamTag::Theta
               : qfi::ParamTag::Phi;
}

double generic_at(const qfi::StatePath& sp, qfi::ParamTag tag, bool skew) {
    const BlochVector zeta = qfi::path_bloch(sp);
    const BlochVector dzeta = qfi::path_derivative(sp, tag);
    return skew ? qfi::skew_bloch(zeta, dzeta) : qfi::fisher_bloch(zeta, dzeta);
}

}  // namespace

std::string format_check_line(const CheckResult& c) {
    return std::string(level_name(c.level)) + " " + c.id + " " + c.detail;
}

std::vector<CheckResult> check_choi_unruh() {
    std::vector<CheckResult> out;
    const double tol = tolerances().algebraic;
    const struct {
        const char* name;
        double r;
    } cases[] = {{"0", 0.0}, {"pi8", kPi / 8.0}, {"pi4", kPi / 4.0}};
    for (const auto& cs : cases) {
        const double c = std::cos(cs.r);
        const double s = std::sin(cs.r);
        ChoiMatrix expect = ChoiMatrix::Zero();
        expect(0, 0) = 0.5 * c * c;
        expect(1, 1) = 0.5 * s * s;
        expect(3, 3) = 0.5;
        expect(0, 3) = expect(3, 0) = 0.5 * c;
        const ChoiMatrix got = choi_of_channel(channels::unruh_kraus({cs.r}));
        const double err = (got - expect).cwiseAbs().maxCoeff();
        out.push_back(graded(err <= tol, std::string("choi-unruh-r") + cs.name,
                             "max entry error " + fmt(err) + " (tol " + fmt(tol) + ")"));
    }
    return out;
}

std::vector<CheckResult> check_completeness() {
    const double tol = tolerances().structural;
    double worst_unruh = 0.0, worst_qnd = 0.0, worst_sgad = 0.0;
    long n_unruh = 0, n_qnd = 0, n_sgad = 0;
    const std::vector<sweep::GridSpec> grids = {
        sweep::figure_preset(1), sweep::figure_panels(1)[1], sweep::figure_preset(2),
        sweep::figure_preset(3), sweep::figure_preset(4),    sweep::figure_preset(5)};
    for (const sweep::GridSpec& g : grids) {
        for_each_point(g, [&](const std::map<std::string, double>& point) {
            const qfi::StatePath sp = sweep::path_at(g, point);
            worst_unruh = std::max(worst_unruh,
                                   completeness_residual(channels::unruh_kraus(sp.unruh)));
            ++n_unruh;
            if (sp.qnd) {
                worst_qnd = std::max(worst_qnd, completeness_residual(channels::qnd_kraus(*sp.qnd)));
                ++n_qnd;
            }
            if (sp.sgad) {
                worst_sgad = std::max(worst_sgad,
                                      completeness_residual(channels::sgad_kraus(*sp.sgad)));
                ++n_sgad;
            }
        });
    }
    auto line = [tol](double worst, long n) {
        return "max residual " + fmt(worst) + " over " + std::to_string(n) + " points (tol " +
               fmt(tol) + ")";
    };
    std::vector<CheckResult> out;
    out.push_back(graded(worst_unruh <= tol, "completeness-unruh", line(worst_unruh, n_unruh)));
    out.push_back(graded(worst_qnd <= tol, "completeness-qnd", line(worst_qnd, n_qnd)));
    out.push_back(graded(worst_sgad <= tol, "completeness-sgad", line(worst_sgad, n_sgad)));
    return out;
}

std::vector<CheckResult> check_pure_unruh_routes() {
    const double tol = tolerances().fisher;
    const sweep::Axis ar{"r", 0.0, kPi / 4.0, 50};
    const sweep::Axis ath{"theta", 0.0, kPi, 50};
    double worst_closed[2] = {0.0, 0.0};
    double worst_sld[2] = {0.0, 0.0};
    for (int i = 0; i < ar.count; ++i) {
        for (int j = 0; j < ath.count; ++j) {
            qfi::StatePath sp;
            sp.unruh.r = sweep::axis_point(ar, i);
            sp.theta = sweep::axis_point(ath, j);
            sp.phi = kPi / 4.0;
            for (const qfi::ParamTag tag : {qfi::ParamTag::Theta, qfi::ParamTag::Phi}) {
                const int k = tag == qfi::ParamTag::Theta ? 0 : 1;
                const double closed = qfi::closed_fisher_unruh(tag, sp.unruh.r, sp.theta);
                const double generic = generic_at(sp, tag, false);
                const double oracle = qfi::fisher_sld_oracle(sp, tag);
                worst_closed[k] = std::max(worst_closed[k], std::abs(closed - generic));
                worst_sld[k] = std::max(worst_sld[k], std::abs(oracle - generic));
            }
        }
    }
    auto line = [tol](double wc, double ws) {
        return "closed vs generic " + fmt(wc) + ", oracle vs generic " + fmt(ws) + " (tol " +
               fmt(tol) + ")";
    };
    std::vector<CheckResult> out;
    out.push_back(graded(worst_closed[0] <= tol && worst_sld[0] <= tol, "pure-unruh-ftheta-routes",
                         line(worst_closed[0], worst_sld[0])));
    out.push_back(graded(worst_closed[1] <= tol && worst_sld[1] <= tol, "pure-unruh-fphi-routes",
                         line(worst_closed[1], worst_sld[1])));
    const double at_pi4 = qfi::closed_fisher_unruh(qfi::ParamTag::Theta, kPi / 4.0, kPi / 2.0);
    out.push_back(graded(std::abs(at_pi4 - 0.5) <= 1e-12, "pure-unruh-ftheta-pi4",
                         "F_theta(r=pi/4) = " + fmt(at_pi4, 17) + " (expected 0.5 to 1e-12)"));
    return out;
}

std::vector<CheckResult> check_reductions() {
    std::vector<CheckResult> out;
    const double tol = 1e-8;
    const sweep::Axis ar{"r", 0.0, kPi / 4.0, 25};
    const sweep::Axis ath{"theta", 0.0, kPi, 25};

    {
        double worst = 0.0;
        for (int i = 0; i < ar.count; ++i) {
            for (int j = 0; j < ath.count; ++j) {
                const double r = sweep::axis_point(ar, i);
                const double th = sweep::axis_point(ath, j);
                for (const qfi::ParamTag tag : {qfi::ParamTag::Theta, qfi::ParamTag::Phi}) {
                    worst = std::max(worst, std::abs(qfi::closed_fisher_qnd(tag, r, th, 0.0, 1.0) -
                                                     qfi::closed_fisher_unruh(tag, r, th)));
                }
            }
        }
        out.push_back(graded(worst <= tol, "reduction-qnd-gamma0",
                             "max gap to noiseless Fisher " + fmt(worst) + " (tol " + fmt(tol) + ")"));
    }

    {
        channels::SgadParams p;
        p.t = 1e-8;
        p.T = 0.5;
        p.s = 0.5;
        p.phis = 0.0;
        p.omega0 = 0.1;
        p.gamma0 = 0.1;
        const channels::SgadDerived d = channels::sgad_derived(p);
        double worst = 0.0;
        for (int i = 0; i < ar.count; ++i) {
            for (int j = 0; j < ath.count; ++j) {
                const double r = sweep::axis_point(ar, i);
                const double th = sweep::axis_point(ath, j);
                for (const qfi::ParamTag tag : {qfi::ParamTag::Theta, qfi::ParamTag::Phi}) {
                    worst = std::max(worst,
                                     std::abs(qfi::closed_fisher_sgad(tag, r, th, kPi / 4.0, d, p.phis) -
                                              qfi::closed_fisher_unruh(tag, r, th)));
                }
            }
        }
        out.push_back(graded(worst <= tol, "reduction-sgad-t0",
                             "max gap to noiseless Fisher " + fmt(worst) + " at t=1e-8 (tol " +
                                 fmt(tol) + ")"));
    }

    {
        channels::SgadParams p;
        p.t = 1.0;
        p.T = 0.0;
        p.s = 0.0;
        p.phis = 0.0;
        p.omega0 = 0.1;
        p.gamma0 = 0.1;
        const double alpha = -std::expm1(-p.gamma0 * p.t);
        Matrix2 k1 = Matrix2::Zero(), k2 = Matrix2::Zero();
        k1(0, 0) = std::sqrt(1.0 - alpha);
        k1(1, 1) = 1.0;
        k2(1, 0) = std::sqrt(alpha);
        const KrausSet ad{{k1, k2}, "amplitude-damping"};
        const KrausSet sg = channels::sgad_kraus(p);
        const double probes[7][2] = {{0.0, 0.0},          {kPi, 0.0},
                                     {kPi / 2.0, 0.0},    {kPi / 2.0, kPi / 2.0},
                                     {kPi / 4.0, kPi / 4.0}, {2.0 * kPi / 3.0, kPi / 3.0},
                                     {1.0, 2.0}};
        double worst = 0.0;
        for (const auto& pr : probes) {
            const DensityMatrix rho = density_from_bloch(bloch_from_angles(pr[0], pr[1]));
            worst = std::max(worst,
                             (apply_kraus(sg, rho) - apply_kraus(ad, rho)).cwiseAbs().maxCoeff());
        }
        out.push_back(graded(worst <= tol, "reduction-sgad-ad",
                             "max entry gap " + fmt(worst) + " to amplitude damping with alpha=" +
                                 fmt(alpha) + " on 7 probe states (tol " + fmt(tol) + ")"));
    }
    return out;
}

std::vector<CheckResult> check_gradients() {
    std::vector<CheckResult> out;
    const double tol = tolerances().gradient;
    for (int id = 1; id <= 10; ++id) {
        double worst = 0.0;
        long n = 0;
        for (const sweep::GridSpec& g : sweep::figure_panels(id)) {
            const qfi::ParamTag tag = tag_of(g);
            for_each_point(g, [&](const std::map<std::string, double>& point) {
                const qfi::StatePath sp = sweep::path_at(g, point);
                const BlochVector analytic = qfi::path_derivative(sp, tag);
                // At the default 1e-6 step the extrapolated difference carries
                // ~1e-9 of rounding noise, the size of the gate itself; 1e-4
                // puts both truncation (~h^4) and rounding (~eps/h) near 1e-12.
                const BlochVector numeric =
                    qfi::path_derivative(sp, tag, qfi::DerivMode::Numeric, 1e-4);
                worst = std::max(worst, (analytic - numeric).cwiseAbs().maxCoeff());
                ++n;
            });
        }
        out.push_back(graded(worst <= tol, "gradient-fig" + std::to_string(id),
                             "max |analytic - numeric| " + fmt(worst) + " over " +
                                 std::to_string(n) + " points (tol " + fmt(tol) + ")"));
    }
    return out;
}

namespace {

struct ResidualScan {
    double worst = 0.0;
    long n = 0;
    long skipped = 0;
};

// Max |closed - generic| over both panels of one figure. The skew grids reach
// into the pure-state guard band of skew_bloch (theta near pi at small r, where
// the state sits within ~1e-10 of the sphere while still moving radially); the
// generic route refuses those points, so they are counted and skipped instead
// of aborting the scan. The closed forms stay finite there.
ResidualScan closed_residual_over(int id, bool skew, channels::QndMode mode) {
    ResidualScan scan;
    for (sweep::GridSpec g : sweep::figure_panels(id)) {
        g.qnd_mode = mode;
        const qfi::ParamTag tag = tag_of(g);
        for_each_point(g, [&](const std::map<std::string, double>& point) {
            const qfi::StatePath sp = sweep::path_at(g, point);
            try {
                const double residual =
                    std::abs(qfi::closed_value(sp, tag, skew) - generic_at(sp, tag, skew));
                scan.worst = std::max(scan.worst, residual);
                ++scan.n;
            } catch (const SingularState&) {
                ++scan.skipped;
            }
        });
    }
    return scan;
}

}  // namespace

std::vector<CheckResult> check_closed_vs_generic(channels::QndMode mode) {
    std::vector<CheckResult> out;
    const double tol = tolerances().closed;
    for (int id = 2; id <= 5; ++id) {
        const bool qnd_grid = id <= 3;
        const ResidualScan scan = closed_residual_over(id, false, mode);
        const std::string cid = "fisher-closed-vs-generic-fig" + std::to_string(id);
        std::string detail = "max |closed - generic| " + fmt(scan.worst) + " over " +
                             std::to_string(scan.n) + " points (tol " + fmt(tol) + ")";
        if (scan.skipped > 0) {
            detail += " [" + std::to_string(scan.skipped) + " singular skipped]";
        }
        if (qnd_grid && mode == channels::QndMode::Kraus) {
            out.push_back({Level::Soft, cid,
                           detail + " [kraus mode: convention split, reported not gated]"});
        } else {
            out.push_back(graded(scan.worst <= tol && scan.skipped == 0, cid, detail));
        }
    }
    return out;
}

std::vector<CheckResult> check_skew_residuals(channels::QndMode mode) {
    std::vector<CheckResult> out;
    for (int id = 6; id <= 10; ++id) {
        const ResidualScan scan = closed_residual_over(id, true, mode);
        std::string detail = "max |closed - generic| " + fmt(scan.worst) + " over " +
                             std::to_string(scan.n) + " points";
        if (scan.skipped > 0) {
            detail += " (" + std::to_string(scan.skipped) + " singular points skipped)";
        }
        if (id == 6) detail += " (expected: the S_theta closed form genuinely differs)";
        out.push_back({Level::Soft, "skew-closed-vs-generic-fig" + std::to_string(id),
                       std::move(detail)});
    }
    return out;
}

std::vector<CheckResult> check_soft_findings() {
    std::vector<CheckResult> out;
    {
        channels::QndParams p;
        p.t = 2.0;
        p.T = 0.5;
        p.s = 0.5;
        p.a = 0.0;
        p.omega0 = 1.0;
        p.omegac = 100.0;
        p.gamma0 = 0.1;
        const double G = p.omega0 * p.omega0 * channels::qnd_gamma(p);
        const auto scale = [](const AffineChannel& ch) { return std::hypot(ch.A(0, 0), ch.A(0, 1)); };
        const double f_kraus = scale(channels::qnd_affine(p, channels::QndMode::Kraus));
        const double f_paper = scale(channels::qnd_affine(p, channels::QndMode::Paper));
        const bool pinned = std::abs(f_kraus - std::exp(-G)) <= 1e-12 &&
                            std::abs(f_paper - std::exp(-G / 4.0)) <= 1e-12;
        out.push_back({pinned ? Level::Soft : Level::Fail, "finding-qnd-exponent",
                       "transverse factor split: kraus mode exp(-G)=" + fmt(f_kraus) +
                           " vs paper mode exp(-G/4)=" + fmt(f_paper) + " at G=" + fmt(G)});
    }
    {
        const double closed = qfi::closed_skew_unruh(qfi::ParamTag::Theta, kPi / 4.0, kPi / 2.0);
        qfi::StatePath sp;
        sp.unruh.r = kPi / 4.0;
        sp.theta = kPi / 2.0;
        sp.phi = kPi / 4.0;
        const double generic = generic_at(sp, qfi::ParamTag::Theta, true);
        const bool pinned =
            std::abs(closed - 0.5) <= 1e-12 && std::abs(generic - 13.0 / 24.0) <= 1e-12;
        out.push_back({pinned ? Level::Soft : Level::Fail, "finding-unruh-stheta-gap",
                       "S_theta at (r=pi/4, theta=pi/2): closed form " + fmt(closed, 10) +
                           " vs generic " + fmt(generic, 10)});
    }
    return out;
}

std::vector<CheckResult> check_trends() {
    std::vector<CheckResult> out;
    for (const sweep::TrendResult& tr : sweep::trend_checks()) {
        CheckResult c;
        c.id = "trend-" + tr.id;
        c.level = tr.hard ? (tr.pass ? Level::Pass : Level::Fail) : Level::Soft;
        c.detail = tr.detail;
        if (!tr.hard) c.detail += tr.pass ? " [holds]" : " [does not hold]";
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::string render_panel(const sweep::GridSpec& g, int workers) {
    std::ostringstream os;
    sweep::write_rows_csv(os, g, sweep::run_sweep(g, workers));
    return os.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

std::vector<CheckResult> check_determinism(const std::string& scratch_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(scratch_dir);
    const std::vector<sweep::GridSpec> panels = sweep::figure_panels(5);
    const char* suffix[2] = {"a", "b"};

    bool rerun_ok = true;
    for (int k = 0; k < 2; ++k) {
        for (int run = 1; run <= 2; ++run) {
            const fs::path file = fs::path(scratch_dir) /
                                  ("figure_5" + std::string(suffix[k]) + "_run" +
                                   std::to_string(run) + ".csv");
            std::ofstream os(file, std::ios::binary);
            sweep::write_rows_csv(os, panels[k], sweep::run_sweep(panels[k]));
        }
        const std::string b1 = slurp(fs::path(scratch_dir) /
                                     ("figure_5" + std::string(suffix[k]) + "_run1.csv"));
        const std::string b2 = slurp(fs::path(scratch_dir) /
                                     ("figure_5" + std::string(suffix[k]) + "_run2.csv"));
        rerun_ok = rerun_ok && !b1.empty() && b1 == b2;
    }

    bool worker_ok = true;
    for (const sweep::GridSpec& g : panels) {
        worker_ok = worker_ok && render_panel(g, 1) == render_panel(g, 4);
    }

    std::vector<CheckResult> out;
    out.push_back(graded(rerun_ok, "determinism-rerun",
                         std::string("figure-5 CSV bytes ") +
                             (rerun_ok ? "identical" : "differ") + " across repeated runs"));
    out.push_back(graded(worker_ok, "determinism-workers",
                         std::string("figure-5 CSV bytes ") +
                             (worker_ok ? "identical" : "differ") + " with 1 vs 4 workers"));
    return out;
}

std::vector<CheckResult> run_all_checks(const std::string& scratch_dir, channels::QndMode mode) {
    std::vector<CheckResult> all;
    auto run = [&all](const char* id, auto&& fn) {
        try {
            for (CheckResult& c : fn()) all.push_back(std::move(c));
        } catch (const std::exception& e) {
            all.push_back({Level::Fail, std::string(id) + "-aborted", e.what()});
        }
    };
    run("choi-unruh", check_choi_unruh);
    run("completeness", check_completeness);
    run("pure-unruh-routes", check_pure_unruh_routes);
    run("reductions", check_reductions);
    run("gradients", check_gradients);
    run("fisher-closed-vs-generic", [mode] { return check_closed_vs_generic(mode); });
    run("skew-closed-vs-generic", [mode] { return check_skew_residuals(mode); });
    run("findings", check_soft_findings);
    run("trends", check_trends);
    run("determinism", [&scratch_dir] { return check_determinism(scratch_dir); });
    return all;
}

bool all_hard_pass(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& c) { return c.level == Level::Fail; });
}

}  // namespace udq::verify

#include "udq/channels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace udq::channels {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_unit_interval(double v, double slack) {
    return v >= -slack && v <= 1.0 + slack;  // NaN fails both comparisons
}

double clamp01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

}  // namespace

// ---------------------------------- Unruh -----------------------------------

UnruhParams unruh_r_from_acceleration(double a_u, double omega) {
    if (!(a_u > 0.0) || !(omega > 0.0))
        throw DomainError("unruh_r_from_acceleration: require a_u > 0 and omega > 0");
    const double cr = 1.0 / std::sqrt(std::exp(-2.0 * kPi * omega / a_u) + 1.0);
    return {std::acos(cr)};
}

static void require_unruh_range(double r, const char* where) {
    // Slack must cover decimal truncations of pi/4 arriving via the command
    // line or gridspec files (ten significant digits land ~2.6e-11 past the
    // exact boundary), not just binary rounding dust.
    if (!(r >= -1e-9 && r <= kPi / 4.0 + 1e-9))
        throw DomainError(std::string(where) + ": r = " + std::to_string(r) +
                          " outside [0, pi/4]");
}

KrausSet unruh_kraus(const UnruhParams& p) {
    require_unruh_range(p.r, "unruh_kraus");
    Matrix2 K1, K2;
    K1 << std::cos(p.r), 0, 0, 1;
    K2 << 0, 0, std::sin(p.r), 0;
    return {{K1, K2}, "unruh"};
}

AffineChannel unruh_affine(const UnruhParams& p) {
    require_unruh_range(p.r, "unruh_affine");
    const double c = std::cos(p.r);
    const double s2 = std::sin(p.r) * std::sin(p.r);
    AffineChannel ch = identity_affine();
    ch.A.diagonal() << c, c, c * c;
    ch.C << 0, 0, -s2;
    return ch;
}

// --------------------------- phase damping (QND) ----------------------------

double qnd_gamma(const QndParams& p) {
    if (p.t < 0.0 || p.T < 0.0 || !(p.omegac > 0.0) || p.gamma0 < 0.0)
        throw DomainError("qnd_gamma: require t >= 0, T >= 0, omegac > 0, gamma0 >= 0");
    // The squeeze terms cancel exactly at t = 0 for every (a, s); evaluating
    // them leaves ~1e-19 of dust, so state the cancellation instead.
    if (p.t == 0.0) return 0.0;
    const double wc = p.omegac, t = p.t, a = p.a;
    const double thermal =
        std::cosh(2.0 * p.s) * (2.0 * wc * t * std::atan(wc * t) - std::log1p(wc * wc * t * t));
    const double u1 = 2.0 * wc * (t - a);
    const double u2 = wc * (t - 2.0 * a);
    const double squeeze =
        std::sinh(2.0 * p.s) *
        (2.0 * u1 * std::atan(u1) - 4.0 * wc * (t - 2.0 * a) * std::atan(u2) +
         4.0 * a * wc * std::atan(2.0 * a * wc) + 2.0 * std::log1p(u2 * u2) -
         std::log1p(u1 * u1) - std::log1p(4.0 * a * a * wc * wc));
    return (p.gamma0 * p.T / (kPi * wc)) * thermal -
           (p.gamma0 * p.T / (2.0 * kPi * wc)) * squeeze;
}

KrausSet qnd_kraus(const QndParams& p) {
    const double g = qnd_gamma(p);
    if (g < 0.0)
        throw DomainError("qnd_kraus: gamma(t) = " + std::to_string(g) + " is negative");
    const double G = g * p.omega0 * p.omega0;
    const double w1 = std::sqrt(0.5 * (1.0 + std::exp(-G)));
    const double w2 = std::sqrt(0.5 * -std::expm1(-G));
    const std::complex<double> ph = std::polar(1.0, -p.omega0 * p.t);
    Matrix2 K1, K2;
    K1 << w1 * ph, 0, 0, w1;
    K2 << -w2 * ph, 0, 0, w2;
    return {{K1, K2}, "qnd"};
}

AffineChannel qnd_affine(const QndParams& p, QndMode mode) {
    const double g = qnd_gamma(p);
    if (g < 0.0)
        throw DomainError("qnd_affine: gamma(t) = " + std::to_string(g) + " is negative");
    const double G = g * p.omega0 * p.omega0;
    const double f = mode == QndMode::Kraus ? std::exp(-G) : std::exp(-0.25 * G);
    const double cw = std::cos(p.omega0 * p.t), sw = std::sin(p.omega0 * p.t);
    AffineChannel ch = identity_affine();
    // The two conventions rotate the transverse plane in opposite senses; the
    // information functionals cannot see the difference (it is a constant
    // shift of phi), but the raw maps do differ.
    if (mode == QndMode::Kraus)
        ch.A.topLeftCorner<2, 2>() << f * cw, -f * sw, f * sw, f * cw;
    else
        ch.A.topLeftCorner<2, 2>() << f * cw, f * sw, -f * sw, f * cw;
    return ch;
}

AffineChannel qnd_affine_paper(const QndParams& p) {
    return qnd_affine(p, QndMode::Paper);
}

// ----------------------------------- SGAD -----------------------------------

SgadDerived sgad_derived(const SgadParams& p) {
    if (p.t < 0.0 || p.T < 0.0 || p.gamma0 < 0.0)
        throw DomainError("sgad_derived: require t >= 0, T >= 0, gamma0 >= 0");
    SgadDerived d;
    d.N_th = p.T > 0.0 ? 1.0 / std::expm1(p.omega0 / p.T) : 0.0;
    const double sh = std::sinh(p.s);
    d.N = d.N_th * std::cosh(2.0 * p.s) + sh * sh;
    d.a_sq = std::sinh(2.0 * p.s) * (2.0 * d.N_th + 1.0);

    const double tau = p.gamma0 * (2.0 * d.N + 1.0) * p.t;
    // sinh^2 and cosh^2 of gamma0*a_sq*t/2 are even, so the sign of a_sq
    // (negative squeezing) drops out here.
    const double x = 0.5 * p.gamma0 * std::abs(d.a_sq) * p.t;
    d.E = std::exp(-tau);
    const double one_mE = -std::expm1(-tau);
    // Everything below is grouped around exp(2x - tau), which stays <= 1
    // because x/tau = |tanh 2s|/2 < 1/2; the textbook sinh/cosh forms
    // overflow near the corners of the (T, s, t) sweep ranges.
    const double ex = std::exp(2.0 * x - tau);
    const double em2x = std::exp(-2.0 * x);
    const double q = 1.0 - em2x;
    const double Esh2 = 0.25 * ex * q * q;  // E sinh^2 x
    d.D = 0.25 * ex * (1.0 + em2x) * (1.0 + em2x);
    d.B = d.N / (2.0 * d.N + 1.0) * one_mE;

    if (tau < 1e-7) {
        // Identity limit. Evaluating the root at such tau drags O(tau)
        // residue into alpha/mu/nu; the channel is the identity to far below
        // every downstream tolerance, so say so exactly.
        d.A = 0.0;
        d.C = d.B + d.E;
        d.p2 = d.N > 0.0 ? d.N / (2.0 * d.N + 1.0) : 0.0;
        d.p1 = 1.0 - d.p2;
        d.alpha = d.mu = d.nu = 0.0;
        d.limit_branch = true;
        return d;
    }
    if (d.N < 1e-300) {
        // T = 0 with s = 0: plain amplitude damping. nu = B/p2 is 0/0 here;
        // its limit is irrelevant because p2 = 0 removes K3 and K4.
        d.A = 0.0;
        d.C = d.B + d.E;
        d.p1 = 1.0;
        d.p2 = 0.0;
        d.mu = d.nu = 0.0;
        d.alpha = one_mE;
        d.limit_branch = true;
        return d;
    }

    d.A = (2.0 * d.N + 1.0) / (2.0 * d.N) * ex * q * q / (2.0 * one_mE);
    d.C = d.A + d.B + d.E;

    // Root of the p2 quadratic, regrouped so the small-t cancellation
    // (1+E)^2 - 4D never happens: den > 0 strictly for t > 0.
    const double num = (d.A + d.B) * one_mE - d.A * d.B * (1.0 + d.E) -
                       Esh2 * (2.0 * (d.A + d.B) + d.E + 1.0);
    const double den = one_mE * one_mE - 4.0 * Esh2;
    const double rad = std::max(
        0.0, d.D * (d.A * (d.A + d.E - 1.0) + Esh2) * (d.B * (d.B + d.E - 1.0) + Esh2));
    const double root = std::sqrt(rad);

    const double slack = tolerances().norm_slack;
    const double sqrtD = std::sqrt(d.D);
    bool have = false;
    double best_mismatch = 0.0;
    for (const int sign : {+1, -1}) {
        const double p2 = (num + sign * 2.0 * root) / den;
        const double p1 = 1.0 - p2;
        const double mu = d.A / p2;
        const double nu = d.B / p2;
        const double alpha = (1.0 - p2 * (mu + nu) - d.E) / p1;
        if (!(in_unit_interval(p2, slack) && in_unit_interval(mu, slack) &&
              in_unit_interval(nu, slack) && in_unit_interval(alpha, slack)))
            continue;
        const double P = p1 * std::sqrt(clamp01(1.0 - alpha)) +
                         p2 * std::sqrt(clamp01(1.0 - mu) * clamp01(1.0 - nu));
        const double mismatch = std::abs(P - sqrtD);
        if (!have || mismatch < best_mismatch) {
            have = true;
            best_mismatch = mismatch;
            d.branch_sign = sign;
            d.p2 = clamp01(p2);
            d.p1 = 1.0 - d.p2;
            d.alpha = clamp01(alpha);
            d.mu = clamp01(mu);
            d.nu = clamp01(nu);
        }
    }
    if (!have)
        throw BranchError("sgad_derived: no physical root at t=" + std::to_string(p.t) +
                          ", T=" + std::to_string(p.T) + ", s=" + std::to_string(p.s));
    return d;
}

KrausSet sgad_kraus(const SgadParams& p) {
    const SgadDerived d = sgad_derived(p);
    const double sp1 = std::sqrt(d.p1), sp2 = std::sqrt(d.p2);
    const std::complex<double> ph = std::polar(1.0, -p.phis);
    Matrix2 K1, K2, K3, K4;
    K1 << sp1 * std::sqrt(1.0 - d.alpha), 0, 0, sp1;
    K2 << 0, 0, sp1 * std::sqrt(d.alpha), 0;
    K3 << sp2 * std::sqrt(1.0 - d.mu), 0, 0, sp2 * std::sqrt(1.0 - d.nu);
    K4 << 0, sp2 * std::sqrt(d.nu), sp2 * std::sqrt(d.mu) * ph, 0;
    return {{K1, K2, K3, K4}, "sgad"};
}

AffineChannel sgad_affine(const SgadParams& p) {
    return affine_from_kraus(sgad_kraus(p));
}

}  // namespace udq::channels

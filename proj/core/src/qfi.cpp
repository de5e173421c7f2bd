#include "udq/qfi.hpp"

#include <cmath>
#include <string>

namespace udq::qfi {

namespace {

double sq(double v) { return v * v; }

// Singular-term guard shared by the closed two-term expressions: num/g where
// g ~ 1 - |zeta|^2 can reach 0 only at pure points, where num must vanish too.
double guarded_over(double num, double g, const char* where) {
    if (g <= tolerances().pure_state) {
        if (std::abs(num) <= tolerances().pure_state) return 0.0;
        throw SingularState(std::string(where) + ": singular term at a pure state");
    }
    return num / g;
}

}  // namespace

double clamp_report(double v) {
    return (v < 0.0 && v >= -1e-12) ? 0.0 : v;
}

// --------------------------------- paths ------------------------------------

AffineChannel path_affine(const StatePath& sp) {
    if (sp.qnd && sp.sgad)
        throw DomainError("path_affine: at most one external channel on the stack");
    AffineChannel ch = channels::unruh_affine(sp.unruh);
    if (sp.qnd) ch = compose_affine(channels::qnd_affine(*sp.qnd, sp.qnd_mode), ch);
    if (sp.sgad) ch = compose_affine(channels::sgad_affine(*sp.sgad), ch);
    return ch;
}

BlochVector path_bloch(const StatePath& sp) {
    return apply_affine(path_affine(sp), bloch_from_angles(sp.theta, sp.phi));
}

BlochVector path_derivative(const StatePath& sp, ParamTag tag, DerivMode mode, double h) {
    if (mode == DerivMode::Analytic) {
        const double st = std::sin(sp.theta), ct = std::cos(sp.theta);
        const double sp_ = std::sin(sp.phi), cp = std::cos(sp.phi);
        BlochVector d0;
        if (tag == ParamTag::Theta)
            d0 << cp * ct, -sp_ * ct, -st;
        else
            d0 << -sp_ * st, -cp * st, 0.0;
        return path_affine(sp).A * d0;
    }
    const auto at = [&](double dd) {
        StatePath q = sp;
        (tag == ParamTag::Theta ? q.theta : q.phi) += dd;
        return path_bloch(q);
    };
    const BlochVector d1 = (at(h) - at(-h)) / (2.0 * h);
    const BlochVector d2 = (at(0.5 * h) - at(-0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// ---------------------------- generic functionals ----------------------------

double fisher_bloch(const BlochVector& zeta, const BlochVector& dzeta) {
    const double n2 = zeta.squaredNorm();
    const auto& tol = tolerances();
    if (n2 > 1.0 + tol.norm_slack)
        throw NormViolation("fisher_bloch: |zeta|^2 = " + std::to_string(n2));
    const double zd = zeta.dot(dzeta);
    if (n2 > 1.0 - tol.pure_state) {
        if (std::abs(zd) > tol.pure_state)
            throw SingularState("fisher_bloch: pure state with zeta.dzeta = " +
                                std::to_string(zd));
        return dzeta.squaredNorm();
    }
    return zd * zd / (1.0 - n2) + dzeta.squaredNorm();
}

double skew_bloch(const BlochVector& zeta, const BlochVector& dzeta) {
    const double n2 = zeta.squaredNorm();
    const auto& tol = tolerances();
    if (n2 > 1.0 + tol.norm_slack)
        throw NormViolation("skew_bloch: |zeta|^2 = " + std::to_string(n2));
    const double zd = zeta.dot(dzeta);
    const double g = std::max(1.0 - n2, 0.0);
    if (n2 > 1.0 - tol.pure_state) {
        if (std::abs(zd) > tol.pure_state)
            throw SingularState("skew_bloch: pure state with zeta.dzeta = " +
                                std::to_string(zd));
        return 2.0 * dzeta.squaredNorm() / (1.0 + std::sqrt(g));
    }
    const double sroot = 1.0 + std::sqrt(g);
    return 2.0 * dzeta.squaredNorm() / sroot + zd * zd * (1.0 / g - 1.0 / sroot);
}

// -------------------------------- SLD oracle ---------------------------------

double fisher_sld_oracle(const StatePath& sp, ParamTag tag) {
    const double h = 1e-6;
    const auto rho_at = [&](double dd) {
        StatePath q = sp;
        (tag == ParamTag::Theta ? q.theta : q.phi) += dd;
        return density_from_bloch(path_bloch(q));
    };
    const DensityMatrix rho = rho_at(0.0);
    const Matrix2 d1 = (rho_at(h) - rho_at(-h)) / (2.0 * h);
    const Matrix2 d2 = (rho_at(0.5 * h) - rho_at(-0.5 * h)) / h;
    const Matrix2 drho = (4.0 * d2 - d1) / 3.0;

    Eigen::SelfAdjointEigenSolver<Matrix2> es(rho);
    const Eigen::Vector2d lam = es.eigenvalues();
    const Matrix2 V = es.eigenvectors();
    const Matrix2 dtil = V.adjoint() * drho * V;

    Matrix2 L = Matrix2::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double denom = lam(i) + lam(j);
            if (denom < tolerances().sld_sector) {
                if (std::abs(dtil(i, j)) > 1e-8)
                    throw SingularState(
                        "fisher_sld_oracle: derivative weight " +
                        std::to_string(std::abs(dtil(i, j))) +
                        " on a zero-eigenvalue sector");
                continue;
            }
            L(i, j) = 2.0 * dtil(i, j) / denom;
        }
    double F = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) F += lam(i) * std::norm(L(i, j));
    return F;
}

// ------------------------------- closed forms --------------------------------

double closed_fisher_unruh(ParamTag tag, double r, double theta) {
    const double c2 = sq(std::cos(r));
    return tag == ParamTag::Theta ? c2 : c2 * sq(std::sin(theta));
}

double closed_fisher_qnd(ParamTag tag, double r, double theta, double gamma, double omega0) {
    const double G = gamma * sq(omega0);
    const double c2 = sq(std::cos(r));
    if (tag == ParamTag::Phi) return std::exp(-0.5 * G) * c2 * sq(std::sin(theta));
    // Dephasing-free limit first: the fraction below is 0/0 wherever theta=0.
    if (G <= 1e-14) return c2;
    const double eg = std::exp(0.5 * G);
    const double ct = std::cos(theta), c2r = std::cos(2.0 * r);
    const double num = c2 * (2.0 * (1.0 + c2r) + std::cos(2.0 * r - theta) +
                             4.0 * eg * (ct - 1.0) - 6.0 * ct + std::cos(2.0 * r + theta));
    const double den = 4.0 * (1.0 - ct) + 2.0 * eg * (c2r - 3.0 + 2.0 * c2 * ct);
    // den vanishes only at r=0, theta=0; return the theta->0 limit there.
    if (den == 0.0) return std::exp(-0.5 * G) * c2;
    return num / den;
}

double closed_skew_unruh(ParamTag tag, double r, double theta) {
    // Implemented exactly as published. S_phi matches the generic route;
    // S_theta does not at finite r (e.g. 1/2 here vs 13/24 generic at
    // r=pi/4, theta=pi/2) and the gap is surfaced by the consistency report.
    const double c2 = sq(std::cos(r));
    const double ch2 = sq(std::cos(0.5 * theta));
    const double s2r = std::sin(2.0 * r);
    if (tag == ParamTag::Phi) return 2.0 * c2 * sq(std::sin(theta)) / (1.0 + ch2 * s2r);
    const double num = c2 * (7.0 + 2.0 * std::cos(2.0 * theta) + 8.0 * ch2 * s2r +
                             2.0 * std::cos(2.0 * r) * sq(std::sin(theta)));
    return num / (4.0 * sq(1.0 + ch2 * s2r));
}

double closed_skew_qnd(ParamTag tag, double r, double theta, double gamma, double omega0) {
    const double G = gamma * sq(omega0);
    const double u = sq(std::cos(r)), v = sq(std::sin(r));
    const double w = std::exp(-0.5 * G);
    const double st2 = sq(std::sin(theta)), ct = std::cos(theta);
    // 1 - H with H = |zeta|^2 of the dephased state.
    const double g = std::max(1.0 - sq(v - u * ct) - w * u * st2, 0.0);
    const double sroot = 1.0 + std::sqrt(g);
    if (tag == ParamTag::Phi) return 2.0 * w * u * st2 / sroot;
    const double first = 2.0 * u * (w * sq(ct) + u * st2) / sroot;
    const double cross = u * (w * ct + v - u * ct);  // zeta . d(zeta)/dtheta, per sin(theta)
    const double num = sq(cross) * st2;
    if (g <= tolerances().pure_state) {
        if (std::abs(num) <= tolerances().pure_state) return first;
        throw SingularState("closed_skew_qnd: singular term at a pure state");
    }
    return first + num * (1.0 / g - 1.0 / sroot);
}

namespace {

// Shared scalars of the SGAD closed forms.
struct SgadTerms {
    double T2;     // Ap^2 + Bp^2, the transverse scale squared
    double M2;     // Am^2 + Bm^2
    double cross;  // Ap Bm - Am Bp, the phi-route cross term
    double Cc, Dd;
    double delta;  // 1 - Dd^2 - T2 sin^2(theta) = 1 - |zeta_new|^2
};

SgadTerms sgad_terms(double r, double theta, double phi, const SgadDerived& d, double phis) {
    const double c = std::cos(r), u = c * c, v = sq(std::sin(r));
    const double P = d.p1 * std::sqrt(1.0 - d.alpha) +
                     d.p2 * std::sqrt((1.0 - d.mu) * (1.0 - d.nu));
    const double Q = d.p2 * std::sqrt(d.mu * d.nu);
    const double Ap = (P * std::sin(phi) - Q * std::sin(phi - phis)) * c;
    const double Am = (P * std::sin(phi) + Q * std::sin(phi - phis)) * c;
    const double Bp = (P * std::cos(phi) + Q * std::cos(phi - phis)) * c;
    const double Bm = (P * std::cos(phi) - Q * std::cos(phi - phis)) * c;
    const double ch2 = sq(std::cos(0.5 * theta)), sh2 = sq(std::sin(0.5 * theta));
    SgadTerms t;
    t.T2 = Ap * Ap + Bp * Bp;
    t.M2 = Am * Am + Bm * Bm;
    t.cross = Ap * Bm - Am * Bp;
    t.Cc = (d.p1 * (d.alpha - 1.0) + d.p2 * (d.mu + d.nu - 1.0)) * u;
    t.Dd = (1.0 - 2.0 * d.p1 * d.alpha - 2.0 * d.p2 * d.mu) * u * ch2 -
           (1.0 - 2.0 * d.p2 * d.nu) * (v * ch2 + sh2);
    t.delta = std::max(1.0 - t.Dd * t.Dd - t.T2 * sq(std::sin(theta)), 0.0);
    return t;
}

}  // namespace

double closed_fisher_sgad(ParamTag tag, double r, double theta, double phi,
                          const SgadDerived& d, double phis) {
    const SgadTerms t = sgad_terms(r, theta, phi, d, phis);
    const double st2 = sq(std::sin(theta)), ct = std::cos(theta);
    if (tag == ParamTag::Theta) {
        const double base = t.T2 * ct * ct + t.Cc * t.Cc * st2;
        const double num = st2 * sq(t.Cc * t.Dd + t.T2 * ct);
        return base + guarded_over(num, t.delta, "closed_fisher_sgad");
    }
    const double num = sq(t.cross) * st2 * st2;
    return t.M2 * st2 + guarded_over(num, t.delta, "closed_fisher_sgad");
}

double closed_skew_sgad(ParamTag tag, double r, double theta, double phi,
                        const SgadDerived& d, double phis) {
    const SgadTerms t = sgad_terms(r, theta, phi, d, phis);
    const double st2 = sq(std::sin(theta)), ct = std::cos(theta);
    const double sroot = 1.0 + std::sqrt(t.delta);
    double first, num;
    if (tag == ParamTag::Theta) {
        first = 2.0 * (t.T2 * ct * ct + t.Cc * t.Cc * st2) / sroot;
        num = sq(t.Cc * t.Dd + t.T2 * ct) * st2;
    } else {
        first = 2.0 * t.M2 * st2 / sroot;
        num = sq(t.cross) * st2 * st2;
    }
    if (t.delta <= tolerances().pure_state) {
        if (std::abs(num) <= tolerances().pure_state) return first;
        throw SingularState("closed_skew_sgad: singular term at a pure state");
    }
    return first + num * (1.0 / t.delta - 1.0 / sroot);
}

double closed_value(const StatePath& sp, ParamTag tag, bool skew) {
    if (sp.qnd && sp.sgad)
        throw DomainError("closed_value: at most one external channel on the stack");
    if (sp.qnd) {
        const double g = channels::qnd_gamma(*sp.qnd);
        return skew ? closed_skew_qnd(tag, sp.unruh.r, sp.theta, g, sp.qnd->omega0)
                    : closed_fisher_qnd(tag, sp.unruh.r, sp.theta, g, sp.qnd->omega0);
    }
    if (sp.sgad) {
        const SgadDerived d = channels::sgad_derived(*sp.sgad);
        return skew
                   ? closed_skew_sgad(tag, sp.unruh.r, sp.theta, sp.phi, d, sp.sgad->phis)
                   : closed_fisher_sgad(tag, sp.unruh.r, sp.theta, sp.phi, d, sp.sgad->phis);
    }
    return skew ? closed_skew_unruh(tag, sp.unruh.r, sp.theta)
                : closed_fisher_unruh(tag, sp.unruh.r, sp.theta);
}

// ---------------------------- consistency report -----------------------------

ConsistencyReport consistency_report(const StatePath& sp, ParamTag tag) {
    const BlochVector z = path_bloch(sp);
    const BlochVector da = path_derivative(sp, tag, DerivMode::Analytic);
    const BlochVector dn = path_derivative(sp, tag, DerivMode::Numeric);

    ConsistencyReport rep;
    const double fa = fisher_bloch(z, da);
    const auto fentry = [&](double v, Route m) {
        rep.fisher.push_back({clamp_report(v), m, std::abs(v - fa)});
    };
    fentry(closed_value(sp, tag, false), Route::ClosedForm);
    rep.fisher.push_back({clamp_report(fa), Route::GenericAnalytic, std::nullopt});
    fentry(fisher_bloch(z, dn), Route::GenericNumeric);
    fentry(fisher_sld_oracle(sp, tag), Route::SldOracle);

    const double sa = skew_bloch(z, da);
    const auto sentry = [&](double v, Route m) {
        rep.skew.push_back({clamp_report(v), m, std::abs(v - sa)});
    };
    sentry(closed_value(sp, tag, true), Route::ClosedForm);
    rep.skew.push_back({clamp_report(sa), Route::GenericAnalytic, std::nullopt});
    sentry(skew_bloch(z, dn), Route::GenericNumeric);
    return rep;
}

}  // namespace udq::qfi

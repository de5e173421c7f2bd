// channels.hpp — Constructors for the three channels the library models: the
// Unruh channel, phase damping by a squeezed thermal bath (QND coupling), and
// squeezed generalized amplitude damping (SGAD). Natural units throughout
// (hbar = k_B = c = 1); figure-style parameters are bare numbers.
#pragma once

#include "udq/qcore.hpp"

namespace udq::channels {

// ---------------------------------- Unruh -----------------------------------

// Acceleration r in [0, pi/4]; cos r runs over [1/sqrt(2), 1].
struct UnruhParams {
    double r = 0.0;
};

// r = arccos(1 / sqrt(e^{-2 pi omega / a_u} + 1)); r -> pi/4 as a_u -> inf.
UnruhParams unruh_r_from_acceleration(double a_u, double omega);

// K1 = diag(cos r, 1), K2 = [[0,0],[sin r,0]].
KrausSet unruh_kraus(const UnruhParams& p);

// A = diag(cos r, cos r, cos^2 r), C = (0, 0, -sin^2 r). Written out rather
// than probed so the analytic and Kraus-derived forms can cross-check.
AffineChannel unruh_affine(const UnruhParams& p);

// --------------------------- phase damping (QND) ----------------------------

struct QndParams {
    double t = 0.0;        // interaction time
    double T = 0.0;        // bath temperature
    double s = 0.0;        // bath squeezing magnitude
    double a = 0.0;        // bath squeezing time offset
    double omega0 = 1.0;   // qubit level separation
    double omegac = 100.0; // Ohmic cutoff frequency
    double gamma0 = 0.0;   // system-bath coupling
};

// Dephasing exponent gamma(t) for an Ohmic bath: a cosh(2s) thermal part plus
// a sinh(2s) squeezing part; gamma(0) = 0 and gamma ∝ T.
double qnd_gamma(const QndParams& p);

// Two weighted diagonal operators diag(±e^{-i omega0 t}, 1). Off-diagonals of
// rho pick up exactly e^{-omega0^2 gamma(t)} e^{-i omega0 t}.
// Throws DomainError if gamma(t) < 0.
KrausSet qnd_kraus(const QndParams& p);

// The transverse shrink factor is where the library's two QND conventions
// split: the Kraus pair gives e^{-omega0^2 gamma}, the closed-form Bloch
// vector uses e^{-omega0^2 gamma / 4} per component. Both are kept; Paper is
// the default so the closed-form information expressions validate against the
// generic route. The consistency report shows both.
enum class QndMode { Paper, Kraus };

AffineChannel qnd_affine(const QndParams& p, QndMode mode);

// Paper-convention map: Rz(omega0 t) . diag(e^{-G/4}, e^{-G/4}, 1), C = 0,
// with G = omega0^2 gamma(t).
AffineChannel qnd_affine_paper(const QndParams& p);

// ----------------------------------- SGAD -----------------------------------

struct SgadParams {
    double t = 0.0;      // interaction time
    double T = 0.0;      // bath temperature
    double s = 0.0;      // bath squeezing magnitude
    double phis = 0.0;   // bath squeezing angle
    double omega0 = 1.0; // qubit level separation
    double gamma0 = 0.0; // system-bath coupling
};

// Scalars feeding the four SGAD Kraus operators. p1 + p2 = 1; alpha, mu, nu
// land in [0,1] (clamped only against sub-1e-10 float overshoot).
struct SgadDerived {
    double N_th = 0.0;  // Planck occupation at omega0
    double N = 0.0;     // squeezed-bath effective photon number
    double a_sq = 0.0;  // sinh(2s) (2 N_th + 1); negative for s < 0
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double E = 0.0;     // e^{-gamma0 (2N+1) t}, the longitudinal scale
    double p1 = 1.0, p2 = 0.0;
    double alpha = 0.0, mu = 0.0, nu = 0.0;
    // True when a closed limit replaced the generic root: t ~ 0 (identity
    // channel) or N = 0 (plain amplitude damping).
    bool limit_branch = false;
    int branch_sign = 0;  // +1 / -1 root of the quadratic; 0 on a limit branch
};

// Evaluates the auxiliary scalars and resolves the quadratic's sign ambiguity
// by keeping physical roots (p2 and the rates inside [0,1]) and, among those,
// the root consistent with the Kraus-set identity
//   p1 sqrt(1-alpha) + p2 sqrt((1-mu)(1-nu)) = sqrt(D).
// Throws BranchError if no root is physical.
SgadDerived sgad_derived(const SgadParams& p);

// Four Kraus operators weighted by p1, p2; K4 carries e^{-i phis} on its
// lower-left entry. Completeness holds identically in the derived scalars.
KrausSet sgad_kraus(const SgadParams& p);

AffineChannel sgad_affine(const SgadParams& p);

}  // namespace udq::channels

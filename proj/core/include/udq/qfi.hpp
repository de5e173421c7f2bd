// qfi.hpp — Quantum Fisher and Wigner-Yanase skew information over qubit
// Bloch paths, via three routes that check each other: closed-form
// expressions per channel regime, the generic Bloch functionals, and a
// density-matrix SLD oracle for Fisher.
#pragma once

#include <optional>
#include <vector>

#include "udq/channels.hpp"

namespace udq::qfi {

using channels::QndMode;
using channels::QndParams;
using channels::SgadDerived;
using channels::SgadParams;
using channels::UnruhParams;

// Which input-state angle is being estimated.
enum class ParamTag { Theta, Phi };

enum class Route { ClosedForm, GenericAnalytic, GenericNumeric, SldOracle };

struct InfoResult {
    double value = 0.0;
    Route method = Route::GenericAnalytic;
    // |value - generic analytic|; absent on the generic analytic entry itself.
    std::optional<double> residual_vs_oracle;
};

// State preparation at (theta, phi) pushed through the Unruh channel and at
// most one external channel. qnd_mode picks the QND transverse-factor
// convention (see channels.hpp); it has no effect on the other regimes.
struct StatePath {
    double theta = 0.0;
    double phi = 0.0;
    UnruhParams unruh;
    std::optional<QndParams> qnd;
    std::optional<SgadParams> sgad;
    QndMode qnd_mode = QndMode::Paper;
};

// Composed affine map of the full stack. Throws DomainError if both external
// channels are set.
AffineChannel path_affine(const StatePath& sp);

BlochVector path_bloch(const StatePath& sp);

enum class DerivMode { Analytic, Numeric };

// Analytic: the channel stack is independent of theta and phi, so the
// derivative is A_stack * d(zeta0). Numeric: central difference on
// path_bloch with one Richardson extrapolation step; kept as an oracle.
BlochVector path_derivative(const StatePath& sp, ParamTag tag,
                            DerivMode mode = DerivMode::Analytic, double h = 1e-6);

// F = (zeta . dzeta)^2 / (1 - |zeta|^2) + |dzeta|^2. At pure states the first
// term is 0/0; when zeta . dzeta vanishes within tolerance its limit along
// the channel families is 0 and the term is dropped, otherwise SingularState.
double fisher_bloch(const BlochVector& zeta, const BlochVector& dzeta);

// S = 2|dzeta|^2 / (1 + sqrt(1 - |zeta|^2))
//   + (zeta . dzeta)^2 (1/(1 - |zeta|^2) - 1/(1 + sqrt(1 - |zeta|^2))),
// with the same pure-state handling as fisher_bloch.
double skew_bloch(const BlochVector& zeta, const BlochVector& dzeta);

// Independent Fisher route: numeric d(rho), solve d(rho) = (L rho + rho L)/2
// in the rho eigenbasis (zero-eigenvalue sectors skipped), return tr(rho L^2).
// Throws SingularState when the derivative has weight on a skipped sector.
double fisher_sld_oracle(const StatePath& sp, ParamTag tag);

// ------------------------- closed-form expressions --------------------------
// One family per regime. The Fisher forms agree with the generic route to
// float accuracy; the skew forms mostly do, except the bare-Unruh S_theta,
// which is implemented exactly as published and genuinely differs from the
// generic route at finite r (the consistency report carries both values).

double closed_fisher_unruh(ParamTag tag, double r, double theta);
double closed_fisher_qnd(ParamTag tag, double r, double theta, double gamma, double omega0);
double closed_fisher_sgad(ParamTag tag, double r, double theta, double phi,
                          const SgadDerived& d, double phis);
double closed_skew_unruh(ParamTag tag, double r, double theta);
double closed_skew_qnd(ParamTag tag, double r, double theta, double gamma, double omega0);
double closed_skew_sgad(ParamTag tag, double r, double theta, double phi,
                        const SgadDerived& d, double phis);

// Dispatches to the regime's closed form. skew=false gives Fisher.
double closed_value(const StatePath& sp, ParamTag tag, bool skew);

// Every route evaluated at one point, with pairwise residuals against the
// generic analytic value. Never raises on disagreement; it reports.
struct ConsistencyReport {
    std::vector<InfoResult> fisher;
    std::vector<InfoResult> skew;
};
ConsistencyReport consistency_report(const StatePath& sp, ParamTag tag);

// Values within -1e-12 of zero print as zero; residuals keep raw values.
double clamp_report(double v);

}  // namespace udq::qfi

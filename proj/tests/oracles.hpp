// oracles.hpp — Reference transcriptions and frozen expected values used only
// by the tests. Every function here re-derives a quantity the core library
// also computes, written from the raw displayed formulas with none of the
// core's overflow-safe regroupings, so a transcription slip in either copy
// shows up as a disagreement instead of cancelling out. The pinned constants
// were produced once with 50-digit arithmetic and are frozen; tests compare
// against them, never against values recomputed by the code under test.
#pragma once

#include <Eigen/Dense>

namespace oracle {

// Dephasing exponent of the squeezed thermal bath, raw arctan/log form.
// Overflow-free but not cancellation-hardened; call at moderate parameters.
double qnd_gamma(double t, double T, double s, double a, double omega_c,
                 double gamma_0);

// Bloch vector after Unruh (r) then phase damping, transverse factor
// e^{-omega_0^2 gamma / 4} and phase advance omega_0 t.
Eigen::Vector3d qnd_bloch(double r, double theta, double phi, double gamma,
                          double omega_0, double t);

// Closed-form Fisher information under phase damping, single-fraction form.
// The theta expression is 0/0 at theta = 0; keep probes away from that axis.
double qnd_fisher_theta(double r, double theta, double gamma, double omega_0);
double qnd_fisher_phi(double r, double theta, double gamma, double omega_0);

// Closed-form skew information of the bare Unruh channel.
double unruh_skew_theta(double r, double theta);
double unruh_skew_phi(double r, double theta);

// SGAD auxiliary scalars, raw sinh/cosh forms plus the quadratic for p2 with
// an explicit root sign (+1 or -1). No limit branches: requires t > 0, T > 0,
// and moderate arguments (the raw sinh forms overflow at extreme corners).
struct SgadScalars {
    double N_th = 0.0;
    double N = 0.0;
    double a_sq = 0.0;
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double E = 0.0;
    double p1 = 0.0, p2 = 0.0;
    double alpha = 0.0, mu = 0.0, nu = 0.0;
};

SgadScalars sgad_scalars(double t, double T, double s, double omega_0,
                         double gamma_0, int sign);

// Bloch vector after Unruh (r) then SGAD with the given scalars.
Eigen::Vector3d sgad_bloch(double r, double theta, double phi, double phi_s,
                           const SgadScalars& sc);

// Amplitude damping rate, the T -> 0 limit of the SGAD family.
double ad_alpha(double t, double gamma_0);

// ------------------------------- frozen pins ---------------------------------
// Expected values computed once at 50-digit precision and frozen here.
namespace pins {

// cos r and r at dimensionless acceleration ratio 2 pi omega / a_u = 1.
inline constexpr double kCosRUnitRatio = 0.8550196364002436635800048;
inline constexpr double kRUnitRatio = 0.5452076238305835853132177;

// skew_bloch((0,0,1/2), (0,0,1)).
inline constexpr double kSkewHalfZ = 1.2711555068422628;

// Bare-Unruh S_theta at (r = pi/4, theta = pi/2): the published closed form
// and the generic Bloch functional genuinely disagree at this point.
inline constexpr double kUnruhSkewThetaPrinted = 0.5;
inline constexpr double kUnruhSkewThetaGeneric = 13.0 / 24.0;

// Same split at (r = pi/8, theta = pi/3).
inline constexpr double kUnruhSkewThetaPrintedPi8 = 1.0299253670430988;
inline constexpr double kUnruhSkewThetaGenericPi8 = 1.0695130771652807;

// Phase-damping Fisher at Gamma = 0.2, r = pi/8, theta = pi/4.
inline constexpr double kQndFisherTheta = 0.7804745938269175;
inline constexpr double kQndFisherPhi = 0.3861635230501284;

// gamma(t = 2) at T = 0.5, omega_c = 100, gamma_0 = 0.1 for three settings:
// squeezed (s = 0.5, a = 0), thermal (s = 0), offset (s = 0.5, a = 0.3).
inline constexpr double kGammaSqueezed = 0.1501660803998051691553281;
inline constexpr double kGammaThermal = 0.09799518198962345688638518;
inline constexpr double kGammaOffset = 0.1159659201322851057916594;

// Full time-axis probe: t = 2, T = 0.5, s = 0.5, a = 0, omega_0 = 1,
// omega_c = 100, gamma_0 = 0.1 at r = pi/8, theta = phi = pi/4.
inline constexpr double kQndProbeFisherTheta = 0.7966362324432592;
inline constexpr double kQndProbeFisherPhi = 0.3959064216648239;
inline constexpr double kQndProbeSkewTheta = 0.9611462688905966;
inline constexpr double kQndProbeSkewPhi = 0.4861901997881742;

// SGAD scalars at t = 2, T = 0.5, s = 0.5, omega_0 = 0.1, gamma_0 = 0.1,
// '+' root of the quadratic.
inline constexpr double kSgadNth = 4.516655566126995;
inline constexpr double kSgadN = 7.241104055628669;
inline constexpr double kSgadAsq = 11.791159218824530;
inline constexpr double kSgadA = 0.21935769543084733;
inline constexpr double kSgadB = 0.44656002632720994;
inline constexpr double kSgadC = 0.71112751177727098;
inline constexpr double kSgadD = 0.14316616826588899;
inline constexpr double kSgadE = 0.045209790019213708;
inline constexpr double kSgadP2 = 0.70988690902777714;
inline constexpr double kSgadNu = 0.62905798183938128;
inline constexpr double kSgadMu = 0.30900371966468266;
inline constexpr double kSgadAlpha = 0.99572372709781433;

// Decay weight P = p1 sqrt(1-alpha) + p2 sqrt((1-mu)(1-nu)) = sqrt(D) and
// cross weight Q = p2 sqrt(mu nu) = sqrt(A B) at the same point.
inline constexpr double kSgadP = 0.37837305436022924;
inline constexpr double kSgadQ = 0.31297983680530489;

// Closed-form information at the same SGAD point, r = pi/8,
// theta = phi = pi/4, phi_s = 0.
inline constexpr double kSgadFisherTheta = 0.11573503560605381;
inline constexpr double kSgadFisherPhi = 0.11431615068524133;
inline constexpr double kSgadSkewTheta = 0.11303694371678653;
inline constexpr double kSgadSkewPhi = 0.11190773921506923;

// Unsqueezed limit (s = 0, T = 0.5, omega_0 = 0.1, t = 2, gamma_0 = 0.1):
// plain generalized amplitude damping, mu = 0, nu = alpha.
inline constexpr double kGadP2 = 0.45016600268752209;
inline constexpr double kGadAlpha = 0.86556335427992370;

// Zero-temperature limit: amplitude damping at t = 1, gamma_0 = 0.1.
inline constexpr double kAdAlpha = 0.09516258196404043;

}  // namespace pins

}  // namespace oracle

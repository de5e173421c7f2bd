// qcore.hpp — Qubit state/channel representations and conversions: Bloch
// vectors, density matrices, Kraus sets, affine Bloch maps, Choi matrices.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "udq/errors.hpp"
#include "udq/tolerances.hpp"

namespace udq {

using BlochVector = Eigen::Vector3d;
using DensityMatrix = Eigen::Matrix2cd;
using ChoiMatrix = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

// Ordered Kraus operators of a qubit channel. Validity is checked where it
// matters (apply_kraus, choi_of_channel), not on construction, so partially
// built sets can exist during channel assembly.
struct KrausSet {
    std::vector<Matrix2> ops;
    std::string label;
};

// zeta -> A*zeta + C on the Bloch ball.
struct AffineChannel {
    Eigen::Matrix3d A;
    Eigen::Vector3d C;
};

// --------------------------- structural predicates ---------------------------

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

// Smallest eigenvalue of a Hermitian matrix; the PSD checks compare it to a
// negative slack rather than zero.
double min_eigenvalue(const Eigen::MatrixXcd& m);

bool is_density(const DensityMatrix& rho, double tol = 1e-10);

// ------------------------------- conversions --------------------------------

// Unit Bloch vector (cos(phi) sin(theta), -sin(phi) sin(theta), cos(theta)).
// The minus sign on the y component is a fixed convention used consistently
// by every formula in this library.
BlochVector bloch_from_angles(double theta, double phi);

// rho = (I + zeta . sigma) / 2. Throws NormViolation if |zeta| exceeds 1
// beyond the configured slack.
DensityMatrix density_from_bloch(const BlochVector& zeta);

// zeta_k = tr(rho sigma_k). Throws ShapeViolation on non-Hermitian or
// non-unit-trace input; exact inverse of density_from_bloch.
BlochVector bloch_from_density(const DensityMatrix& rho);

// ------------------------------ channel action ------------------------------

// rho -> sum_j K_j rho K_j^dagger. Throws CompletenessViolation if the set
// does not resolve the identity within structural tolerance.
DensityMatrix apply_kraus(const KrausSet& K, const DensityMatrix& rho);

// ||sum_j K_j^dagger K_j - I||_max, always >= 0.
double completeness_residual(const KrausSet& K);

// Extracts (A, C) by probing the six axis-aligned unit Bloch vectors and the
// origin; exact for the linear maps every Kraus set induces.
AffineChannel affine_from_kraus(const KrausSet& K);

// (outer . inner): A = A_out A_in, C = A_out C_in + C_out.
AffineChannel compose_affine(const AffineChannel& outer, const AffineChannel& inner);

inline BlochVector apply_affine(const AffineChannel& ch, const BlochVector& zeta) {
    return ch.A * zeta + ch.C;
}

inline AffineChannel identity_affine() {
    return {Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero()};
}

// (id (x) E) applied to the maximally entangled state (|00> + |11>)/sqrt(2),
// channel acting on the second mode. Positivity of the result certifies
// complete positivity of the channel.
ChoiMatrix choi_of_channel(const KrausSet& K);

}  // namespace udq

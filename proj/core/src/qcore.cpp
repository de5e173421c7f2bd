#include "udq/qcore.hpp"

#include <cmath>
#include <complex>

namespace udq {

using std::complex;
namespace {

const complex<double> I1(0.0, 1.0);

Matrix2 pauli(int k) {
    Matrix2 s;
    switch (k) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -I1, I1, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

}  // namespace

ToleranceConfig& tolerances() {
    static ToleranceConfig cfg;
    return cfg;
}

void set_tolerance(ToleranceConfig& cfg, const std::string& key, double value) {
    if (!(value > 0))
        throw std::invalid_argument("set_tolerance: value for '" + key + "' must be > 0");
    if (key == "structural") cfg.structural = value;
    else if (key == "algebraic") cfg.algebraic = value;
    else if (key == "roundtrip") cfg.roundtrip = value;
    else if (key == "norm") cfg.norm_slack = value;
    else if (key == "pure") cfg.pure_state = value;
    else if (key == "sld") cfg.sld_sector = value;
    else if (key == "fisher") cfg.fisher = value;
    else if (key == "closed") cfg.closed = value;
    else if (key == "gradient") cfg.gradient = value;
    else throw std::invalid_argument("set_tolerance: unknown key '" + key + "'");
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_density(const DensityMatrix& rho, double tol) {
    if (!is_hermitian(rho, 1e-12)) return false;
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
        return false;
    return min_eigenvalue(rho) >= -tol;
}

BlochVector bloch_from_angles(double theta, double phi) {
    return {std::cos(phi) * std::sin(theta), -std::sin(phi) * std::sin(theta),
            std::cos(theta)};
}

DensityMatrix density_from_bloch(const BlochVector& zeta) {
    const double n2 = zeta.squaredNorm();
    if (n2 > 1.0 + tolerances().norm_slack)
        throw NormViolation("density_from_bloch: |zeta| = " + std::to_string(std::sqrt(n2)) +
                            " exceeds 1");
    DensityMatrix rho;
    rho << 0.5 * (1.0 + zeta.z()), 0.5 * complex<double>(zeta.x(), -zeta.y()),
           0.5 * complex<double>(zeta.x(), zeta.y()), 0.5 * (1.0 - zeta.z());
    return rho;
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
    if (!is_hermitian(rho, 1e-12))
        throw ShapeViolation("bloch_from_density: input is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
        throw ShapeViolation("bloch_from_density: trace != 1");
    BlochVector zeta;
    for (int k = 0; k < 3; ++k) zeta[k] = (rho * pauli(k + 1)).trace().real();
    return zeta;
}

double completeness_residual(const KrausSet& K) {
    Matrix2 acc = Matrix2::Zero();
    for (const auto& op : K.ops) acc += op.adjoint() * op;
    return (acc - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

DensityMatrix apply_kraus(const KrausSet& K, const DensityMatrix& rho) {
    const double res = completeness_residual(K);
    if (res > tolerances().structural)
        throw CompletenessViolation("apply_kraus: '" + K.label + "' completeness residual " +
                                    std::to_string(res));
    DensityMatrix out = DensityMatrix::Zero();
    for (const auto& op : K.ops) out += op * rho * op.adjoint();
    return out;
}

AffineChannel affine_from_kraus(const KrausSet& K) {
    const double res = completeness_residual(K);
    if (res > tolerances().structural)
        throw CompletenessViolation("affine_from_kraus: '" + K.label +
                                    "' completeness residual " + std::to_string(res));
    const auto image = [&](const BlochVector& z) {
        DensityMatrix out = DensityMatrix::Zero();
        const DensityMatrix rho = density_from_bloch(z);
        for (const auto& op : K.ops) out += op * rho * op.adjoint();
        return bloch_from_density(out);
    };
    AffineChannel ch;
    ch.C = image(BlochVector::Zero());
    for (int k = 0; k < 3; ++k) {
        BlochVector e = BlochVector::Zero();
        e[k] = 1.0;
        // Column from the +/- axis pair; the difference cancels C exactly.
        ch.A.col(k) = 0.5 * (image(e) - image(-e));
    }
    return ch;
}

AffineChannel compose_affine(const AffineChannel& outer, const AffineChannel& inner) {
    return {outer.A * inner.A, outer.A * inner.C + outer.C};
}

ChoiMatrix choi_of_channel(const KrausSet& K) {
    const double res = completeness_residual(K);
    if (res > tolerances().structural)
        throw CompletenessViolation("choi_of_channel: '" + K.label +
                                    "' completeness residual " + std::to_string(res));
    // |ij><kl| blocks: Choi = sum_{ik} |i><k| (x) E(|i><k|) / 2.
    ChoiMatrix choi = ChoiMatrix::Zero();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            Matrix2 eik = Matrix2::Zero();
            eik(i, k) = 1.0;
            Matrix2 mapped = Matrix2::Zero();
            for (const auto& op : K.ops) mapped += op * eik * op.adjoint();
            choi.block<2, 2>(2 * i, 2 * k) += 0.5 * mapped;
        }
    return choi;
}

}  // namespace udq

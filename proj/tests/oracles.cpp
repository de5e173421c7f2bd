#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double qnd_gamma(double t, double T, double s, double a, double omega_c,
                 double gamma_0) {
    const double pi = std::acos(-1.0);
    const double thermal =
        (gamma_0 * T / (pi * omega_c)) * std::cosh(2.0 * s) *
        (2.0 * omega_c * t * std::atan(omega_c * t) +
         std::log(1.0 / (1.0 + omega_c * omega_c * t * t)));
    const double u1 = omega_c * (t - a);
    const double u2 = omega_c * (t - 2.0 * a);
    const double squeeze =
        (gamma_0 * T / (2.0 * pi * omega_c)) * std::sinh(2.0 * s) *
        (4.0 * u1 * std::atan(2.0 * u1) - 4.0 * u2 * std::atan(u2) +
         4.0 * a * omega_c * std::atan(2.0 * a * omega_c) +
         std::log((1.0 + u2 * u2) * (1.0 + u2 * u2) / (1.0 + 4.0 * u1 * u1)) +
         std::log(1.0 / (1.0 + 4.0 * a * a * omega_c * omega_c)));
    return thermal - squeeze;
}

Eigen::Vector3d qnd_bloch(double r, double theta, double phi, double gamma,
                          double omega_0, double t) {
    const double decay = std::exp(-omega_0 * omega_0 * gamma / 4.0);
    const double cr = std::cos(r);
    const double sr = std::sin(r);
    return {cr * std::sin(theta) * std::cos(phi + omega_0 * t) * decay,
            -cr * std::sin(theta) * std::sin(phi + omega_0 * t) * decay,
            cr * cr * std::cos(theta) - sr * sr};
}

double qnd_fisher_theta(double r, double theta, double gamma, double omega_0) {
    const double G = gamma * omega_0 * omega_0;
    const double cr = std::cos(r);
    const double num =
        cr * cr *
        (2.0 * (1.0 + std::cos(2.0 * r)) + std::cos(2.0 * r - theta) +
         4.0 * std::exp(G / 2.0) * (std::cos(theta) - 1.0) -
         6.0 * std::cos(theta) + std::cos(2.0 * r + theta));
    const double den =
        4.0 * (1.0 - std::cos(theta)) +
        2.0 * std::exp(G / 2.0) *
            (std::cos(2.0 * r) - 3.0 + 2.0 * cr * cr * std::cos(theta));
    return num / den;
}

double qnd_fisher_phi(double r, double theta, double gamma, double omega_0) {
    const double G = gamma * omega_0 * omega_0;
    const double cr = std::cos(r);
    const double st = std::sin(theta);
    return std::exp(-G / 2.0) * cr * cr * st * st;
}

double unruh_skew_theta(double r, double theta) {
    const double cr = std::cos(r);
    const double ch = std::cos(theta / 2.0);
    const double st = std::sin(theta);
    const double num = cr * cr *
                       (7.0 + 2.0 * std::cos(2.0 * theta) +
                        8.0 * ch * ch * std::sin(2.0 * r) +
                        2.0 * std::cos(2.0 * r) * st * st);
    const double den = 1.0 + ch * ch * std::sin(2.0 * r);
    return num / (4.0 * den * den);
}

double unruh_skew_phi(double r, double theta) {
    const double cr = std::cos(r);
    const double ch = std::cos(theta / 2.0);
    const double st = std::sin(theta);
    return 2.0 * cr * cr * st * st / (1.0 + ch * ch * std::sin(2.0 * r));
}

SgadScalars sgad_scalars(double t, double T, double s, double omega_0,
                         double gamma_0, int sign) {
    if (t <= 0.0 || T <= 0.0) {
        throw std::invalid_argument("sgad_scalars: needs t > 0 and T > 0");
    }
    SgadScalars sc;
    sc.N_th = 1.0 / (std::exp(omega_0 / T) - 1.0);
    const double ch = std::cosh(s);
    const double sh = std::sinh(s);
    sc.N = sc.N_th * (ch * ch + sh * sh) + sh * sh;
    sc.a_sq = std::sinh(2.0 * s) * (2.0 * sc.N_th + 1.0);

    const double X = gamma_0 * sc.a_sq * t / 2.0;
    const double Y = gamma_0 * (2.0 * sc.N + 1.0) * t / 2.0;
    sc.E = std::exp(-2.0 * Y);
    sc.A = ((2.0 * sc.N + 1.0) / (2.0 * sc.N)) * std::sinh(X) * std::sinh(X) /
           std::sinh(Y) * std::exp(-Y);
    sc.B = (sc.N / (2.0 * sc.N + 1.0)) * (1.0 - sc.E);
    sc.C = sc.A + sc.B + sc.E;
    sc.D = std::cosh(X) * std::cosh(X) * sc.E;

    const double A = sc.A, B = sc.B, C = sc.C, D = sc.D;
    const double rad = D * (B - A * B + (A - 1.0) * C + D) *
                       (A - A * B + (B - 1.0) * C + D);
    const double num = A * A * B + C * C +
                       A * (B * B - C - B * (1.0 + C) - D) -
                       (1.0 + B) * D - C * (B + D - 1.0) +
                       double(sign) * 2.0 * std::sqrt(rad);
    const double den = (A + B - C - 1.0) * (A + B - C - 1.0) - 4.0 * D;
    sc.p2 = num / den;
    sc.p1 = 1.0 - sc.p2;

    sc.nu = sc.N * (1.0 - sc.E) / (sc.p2 * (2.0 * sc.N + 1.0));
    sc.mu = ((2.0 * sc.N + 1.0) / (2.0 * sc.p2 * sc.N)) * std::sinh(X) *
            std::sinh(X) / std::sinh(Y) * std::exp(-Y);
    sc.alpha = (1.0 - sc.p2 * (sc.mu + sc.nu) - sc.E) / sc.p1;
    return sc;
}

Eigen::Vector3d sgad_bloch(double r, double theta, double phi, double phi_s,
                           const SgadScalars& sc) {
    const double P = sc.p1 * std::sqrt(1.0 - sc.alpha) +
                     sc.p2 * std::sqrt((1.0 - sc.mu) * (1.0 - sc.nu));
    const double Q = sc.p2 * std::sqrt(sc.mu * sc.nu);
    const double cr = std::cos(r);
    const double sr = std::sin(r);
    const double st = std::sin(theta);
    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    const double x =
        cr * st * (P * std::cos(phi) + Q * std::cos(phi - phi_s));
    const double y =
        -cr * st * (P * std::sin(phi) - Q * std::sin(phi - phi_s));
    const double z =
        (1.0 - 2.0 * sc.p1 * sc.alpha - 2.0 * sc.p2 * sc.mu) * cr * cr * ch * ch -
        (1.0 - 2.0 * sc.p2 * sc.nu) * (sr * sr * ch * ch + sh * sh);
    return {x, y, z};
}

double ad_alpha(double t, double gamma_0) {
    return 1.0 - std::exp(-gamma_0 * t);
}

}  // namespace oracle

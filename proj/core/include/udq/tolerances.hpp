// tolerances.hpp — One mutable knob set for every numeric gate in the library.
#pragma once

#include <stdexcept>
#include <string>

namespace udq {

// Defaults are deliberate, not placeholders; loosening any of them weakens a
// verification gate, so overrides go through set_tolerance() where the key is
// validated.
struct ToleranceConfig {
    double structural = 1e-10;   // completeness residuals, Choi positivity, ball containment
    double algebraic = 1e-12;    // entrywise matrix identities, trace/Hermiticity slack
    double roundtrip = 1e-14;    // Bloch <-> density inversions
    double norm_slack = 1e-10;   // allowed |zeta|^2 - 1 overshoot on channel outputs
    double pure_state = 1e-9;    // |zeta|^2 within this of 1 counts as pure
    double sld_sector = 1e-12;   // eigenvalue-pair cutoff when inverting the SLD equation
    double fisher = 1e-6;        // generic Fisher vs density-matrix oracle
    double closed = 1e-8;        // closed forms vs generic Bloch route
    double gradient = 1e-9;      // analytic vs central-difference derivatives
};

// Process-wide configuration. The CLI mutates it once at startup; the library
// only reads it, so concurrent sweep workers are safe.
ToleranceConfig& tolerances();

// Accepts the keys named in ToleranceConfig (e.g. "fisher", "closed").
// Throws std::invalid_argument on an unknown key or a non-positive value.
void set_tolerance(ToleranceConfig& cfg, const std::string& key, double value);

}  // namespace udq

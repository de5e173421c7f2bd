// errors.hpp — Exception taxonomy; every throw site uses one of these.
#pragma once

#include <stdexcept>
#include <string>

namespace udq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A Bloch vector left the closed unit ball by more than the allowed slack.
struct NormViolation : Error {
    using Error::Error;
};

// A matrix failed a structural requirement (Hermiticity, unit trace, shape).
struct ShapeViolation : Error {
    using Error::Error;
};

// A Kraus set does not resolve the identity within tolerance.
struct CompletenessViolation : Error {
    using Error::Error;
};

// A parameter lies outside its physical domain.
struct DomainError : Error {
    using Error::Error;
};

// Neither sign branch of the mixing-probability root yields a physical channel.
struct BranchError : Error {
    using Error::Error;
};

// Information functional evaluated at a pure state with a genuinely singular
// derivative direction (the 0/0 has no finite limit there).
struct SingularState : Error {
    using Error::Error;
};

// Figure preset id outside 1..10.
struct UnknownFigure : Error {
    using Error::Error;
};

}  // namespace udq

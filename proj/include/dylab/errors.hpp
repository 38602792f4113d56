// include/dylab/errors.hpp - error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace dylab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input fails the literal grammar (bad character, empty side, lone sign, odd
// code length, ...).
struct MalformedLiteral : Error {
    using Error::Error;
};

// Input parses but is not the canonical lowest-form literal ("01", "0.10",
// "-0").
struct NotLowestForm : Error {
    using Error::Error;
};

// Argument outside the domain of the requested function.
struct DomainError : Error {
    using Error::Error;
};

// Open-interval strip [a+2^-k, b-2^-k] is empty for the given k.
struct EmptyStrip : Error {
    using Error::Error;
};

// Oracle answers that cannot belong to any point of the declared domain.
struct InconsistentOracles : Error {
    using Error::Error;
};

// Request is well-formed but would exhaust memory/time (e.g. a mantissa of
// 2^k bits for huge k).  Guards, not mathematics.
struct ResourceLimit : Error {
    using Error::Error;
};

}  // namespace dylab
